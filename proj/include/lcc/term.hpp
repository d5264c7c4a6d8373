#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lcc {

using Name = std::string;
using NameSet = std::set<Name>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SignatureError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};

// Variables are lowercase-initial, constructors uppercase-initial; the two
// lexical classes never overlap.
bool is_variable_name(const Name& n);
bool is_constructor_name(const Name& n);

/// The ordered constructor set c1 … cn fixed for a whole session (n >= 1).
/// The ordering is significant: tuple slot i and the canonical failure {}.c1
/// depend on it.
class Signature {
 public:
  explicit Signature(std::vector<Name> constructors);

  const std::vector<Name>& constructors() const { return ctors_; }
  std::size_t size() const { return ctors_.size(); }
  bool contains(const Name& c) const;
  /// 1-based slot of c; throws SignatureError if undeclared.
  std::size_t index_of(const Name& c) const;
  const Name& canonical_failure_head() const { return ctors_.front(); }

  bool operator==(const Signature& other) const { return ctors_ == other.ctors_; }

 private:
  std::vector<Name> ctors_;
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

/// Ordered partial map from constructors to branch bodies. Branch order is
/// kept for printing; equality of bindings is as functions (order-blind).
class CaseBinding {
 public:
  CaseBinding() = default;
  explicit CaseBinding(std::vector<std::pair<Name, Term>> branches);

  const std::vector<std::pair<Name, Term>>& branches() const { return branches_; }
  std::optional<Term> lookup(const Name& c) const;
  bool binds(const Name& c) const;
  std::size_t size() const { return branches_.size(); }
  bool empty() const { return branches_.empty(); }

 private:
  std::vector<std::pair<Name, Term>> branches_;
};

struct VarNode {
  Name name;
};
struct ConsNode {
  Name name;
};
struct AppNode {
  Term fun;
  Term arg;
};
struct LamNode {
  Name binder;
  Term body;
};
struct CaseNode {
  CaseBinding binding;
  Term scrutinee;
};

struct TermNode {
  std::variant<VarNode, ConsNode, AppNode, LamNode, CaseNode> node;
};

Term var(Name name);
Term cons(Name name);
Term app(Term fun, Term arg);
Term app(Term fun, const std::vector<Term>& args);
Term lam(Name binder, Term body);
Term lam(const std::vector<Name>& binders, Term body);
Term case_of(CaseBinding binding, Term scrutinee);

inline const VarNode* as_var(const Term& t) { return std::get_if<VarNode>(&t->node); }
inline const ConsNode* as_cons(const Term& t) { return std::get_if<ConsNode>(&t->node); }
inline const AppNode* as_app(const Term& t) { return std::get_if<AppNode>(&t->node); }
inline const LamNode* as_lam(const Term& t) { return std::get_if<LamNode>(&t->node); }
inline const CaseNode* as_case(const Term& t) { return std::get_if<CaseNode>(&t->node); }

/// Free variables. Constructors contribute nothing; a case contributes the
/// free variables of its scrutinee and of every branch body.
NameSet free_vars(const Term& t);
NameSet free_vars(const CaseBinding& b);

/// Every variable name occurring in t, free or as a binder.
NameSet all_names(const Term& t);

bool occurs_free(const Term& t, const Name& x);

/// Equality up to consistent renaming of bound variables.
bool alpha_eq(const Term& a, const Term& b);

/// Canonical serialization: two terms are alpha-equal iff their keys are
/// byte-equal. Bound variables are rendered as binding distances, binding
/// branches are sorted by constructor.
std::string alpha_key(const Term& t);

/// Deterministic fresh name: `base` itself if unused, otherwise the stem of
/// `base` (trailing digits stripped) with the smallest free counter suffix.
Name fresh_name(const Name& base, const NameSet& avoid);

/// Capture-avoiding substitution t{x := u}.
Term substitute(const Term& t, const Name& x, const Term& u);

/// Branch of c in `binding`, or nullopt when c is outside its domain.
/// Throws SignatureError when c is not a declared constructor.
std::optional<Term> binding_lookup(const Signature& sig, const CaseBinding& binding,
                                   const Name& c);

std::size_t term_size(const Term& t);

/// Checks every constructor occurring in t (as a Cons leaf or a binding
/// domain element) is declared; throws SignatureError otherwise.
void validate_over(const Signature& sig, const Term& t);

/// An ordered list of distinct variables x1 … xk (k >= 0).
class Context {
 public:
  Context() = default;
  explicit Context(std::vector<Name> vars);

  const std::vector<Name>& vars() const { return vars_; }
  std::size_t size() const { return vars_.size(); }
  bool contains(const Name& x) const;

 private:
  std::vector<Name> vars_;
};

}  // namespace lcc
