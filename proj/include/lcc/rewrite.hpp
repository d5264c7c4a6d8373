#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcc/term.hpp"

namespace lcc {

enum class Rule : std::uint8_t {
  app_lam,    // (\x.t) u        -> t{x := u}
  lam_app,    // \x.t x          -> t            (x not free in t)
  case_cons,  // {th}.c          -> th_c         (c in dom th)
  case_app,   // {th}.(t u)      -> ({th}.t) u
  case_lam,   // {th}.\x.t       -> \x.{th}.t    (x not free in th)
  case_case,  // {th}.({ph}.t)   -> {th o ph}.t
};

inline constexpr std::array<Rule, 6> kAllRules = {
    Rule::app_lam, Rule::lam_app, Rule::case_cons,
    Rule::case_app, Rule::case_lam, Rule::case_case,
};

std::string_view rule_name(Rule r);        // "AppLam", ...
std::string_view rule_short_name(Rule r);  // "AL", ...
std::optional<Rule> rule_from_short_name(std::string_view s);

/// Selectable subset of the six rules. LCM is everything except CaseCase;
/// CC_ONLY is CaseCase alone.
class RuleSet {
 public:
  static RuleSet all() { return RuleSet{0b111111}; }
  static RuleSet lcm() { return RuleSet{0b011111}; }
  static RuleSet cc_only() { return RuleSet{0b100000}; }
  static RuleSet none() { return RuleSet{0}; }
  static std::optional<RuleSet> from_name(std::string_view name);  // all | lcm | cc

  bool contains(Rule r) const { return bits_ & (1u << static_cast<unsigned>(r)); }
  bool operator==(const RuleSet& o) const { return bits_ == o.bits_; }

 private:
  explicit RuleSet(std::uint8_t bits) : bits_(bits) {}
  std::uint8_t bits_;
};

struct PathStep {
  enum class Kind { fun, arg, body, scrutinee, branch };
  Kind kind;
  Name branch_ctor{};  // set when kind == branch

  bool operator==(const PathStep& o) const {
    return kind == o.kind && branch_ctor == o.branch_ctor;
  }
  std::string to_string() const;  // "function" | "argument" | "body" | "scrutinee" | "branch-C"
};

/// Path of child selectors from the root; the empty path is the root itself.
struct Position {
  std::vector<PathStep> path;

  static Position root() { return {}; }
  Position child(PathStep step) const;
  bool is_root() const { return path.empty(); }
  bool operator==(const Position& o) const { return path == o.path; }
  std::string to_string() const;  // "root" or "function/scrutinee/..."
};

struct Step {
  Rule rule;
  Position pos;
  Term before;
  Term after;
};
using Trace = std::vector<Step>;

/// th o {c1 -> t1; ...; cn -> tn} = {c1 -> {th}.t1; ...; cn -> {th}.tn}.
CaseBinding compose_bindings(const CaseBinding& theta, const CaseBinding& phi);

/// The rule whose left-hand side matches at the root of t, if any. At most
/// one rule matches any given node shape; a case of an out-of-domain
/// constructor (a match failure) matches nothing.
std::optional<Rule> head_redex_rule(const Term& t);

/// All enabled redexes in deterministic leftmost-outermost order: a node
/// before its descendants, children in printed order (for applications the
/// function then the argument; for cases the branch bodies in binding order,
/// then the scrutinee).
std::vector<std::pair<Rule, Position>> enumerate_redexes(const Term& t, RuleSet rules);

/// Subterm addressed by pos; throws PreconditionError if the path does not
/// exist in t.
Term subterm_at(const Term& t, const Position& pos);

/// One contraction of `rule` at `pos`; throws PreconditionError unless the
/// rule's left-hand side (side conditions included) matches there.
Term apply_step(const Term& t, Rule rule, const Position& pos);

struct ReduceResult {
  Term term;
  Trace trace;
  bool exhausted = false;  // fuel ran out with redexes remaining
};

/// Repeatedly contracts the first enumerated redex until no redex remains or
/// the fuel budget (one contraction = one fuel) is spent.
ReduceResult reduce(const Term& t, RuleSet rules, std::size_t fuel);

/// Unique CaseCase normal form cnf(t), by the structural equations: recurse
/// into all subterms and collapse {th}.({ph}.u) into cnf({th o ph}.u).
Term normalize_cc(const Term& t);
CaseBinding normalize_cc(const CaseBinding& b);

/// Structural measure. 128-bit: the measure is bounded by 3^(node count),
/// which overflows 64 bits already around 40 nodes.
using Measure = unsigned __int128;

/// mes(x) = mes(c) = 1, mes(\x.t) = mes(t)+1, mes(t u) = mes(t)+mes(u),
/// mes({th}.t) = mes(t)*(mes(th)+2), mes(th) = sum of branch measures.
Measure measure(const Term& t);
Measure measure(const CaseBinding& b);
std::string measure_to_string(Measure m);

}  // namespace lcc
