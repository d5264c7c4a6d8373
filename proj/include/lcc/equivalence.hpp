#pragma once

#include "lcc/completion.hpp"
#include "lcc/rewrite.hpp"
#include "lcc/term.hpp"
#include "lcc/verdict.hpp"

namespace lcc {

struct EquivQuery {
  Term left;
  Term right;
  std::size_t fuel = 1000;
  RuleSet rules = RuleSet::all();
};

/// Bounded conversion check. Proved when the terms are alpha-equal or a
/// common reduct is found (the verdict carries it plus both reduction
/// traces); Refuted when the two sides reach distinct normal forms, or both
/// reduct closures are exhausted without meeting (sound by confluence);
/// Unknown when fuel runs out first. Fuel counts contractions performed
/// across both sides.
Verdict convertible(const EquivQuery& q);
Verdict convertible(const Term& left, const Term& right, std::size_t fuel);

/// For every one-step reduct t' of t, checks that the interpretations of t
/// and t' in the syntactic PER model are convertible. Proved iff every
/// reduct check proves; Refuted would falsify soundness.
Verdict check_soundness(const Signature& sig, const Context& ctx, const Term& t,
                        std::size_t fuel);

/// Runs conversion on the pair both before and after case-completion; Proved
/// when the two routes agree (both Proved or both Refuted), Refuted when
/// they definitely disagree, Unknown otherwise. Both terms must be known
/// hereditarily defined within hdef_fuel (PreconditionError otherwise).
Verdict check_completeness_pair(const Signature& sig, const Term& t1, const Term& t2,
                                std::size_t fuel, std::size_t hdef_fuel = 2000);

}  // namespace lcc
