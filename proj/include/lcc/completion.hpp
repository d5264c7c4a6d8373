#pragma once

#include <vector>

#include "lcc/rewrite.hpp"
#include "lcc/term.hpp"
#include "lcc/verdict.hpp"

namespace lcc {

/// A match failure is a subterm {th}.c with c outside dom(th). A term is
/// defined when it has no such subterm.
struct DefinednessReport {
  bool defined = true;
  std::vector<Position> failure_positions;
};

/// Scans all subterms (branch bodies included) in leftmost-outermost order.
DefinednessReport is_defined(const Term& t);

/// Semi-decides whether every reduct of t (any number of steps, zero
/// included) is defined. Breadth-first exploration of the reduct set under
/// all six rules, memoized up to alpha; one contraction costs one fuel.
/// Proved is claimed only when the alpha-closure of reducts is exhausted.
Verdict is_hereditarily_defined(const Term& t, std::size_t fuel);

/// Case-completion: every binding totalized over the signature, missing
/// branches filled with the canonical failure {}.c1.
Term complete(const Signature& sig, const Term& t);
CaseBinding complete_binding(const Signature& sig, const CaseBinding& b);

/// The canonical failure representative {}.c1.
Term canonical_failure(const Signature& sig);

}  // namespace lcc
