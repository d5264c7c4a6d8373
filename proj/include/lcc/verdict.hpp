#pragma once

#include <optional>

#include "lcc/rewrite.hpp"
#include "lcc/term.hpp"

namespace lcc {

/// Outcome of a fuel-bounded semi-decision procedure.
///
/// Proved may carry a witness (for joinability queries, a common reduct with
/// the reduction traces of both sides). Refuted always carries a reproducible
/// witness. Unknown records how many contractions were explored before the
/// budget ran out.
struct Verdict {
  enum class Kind { proved, refuted, unknown };

  Kind kind = Kind::unknown;
  std::optional<Term> witness;
  std::optional<Term> witness_right;
  Trace trace;        // steps from the (left) start term to the witness
  Trace right_trace;  // steps from the right start term, for two-sided queries
  std::size_t explored = 0;

  bool proved() const { return kind == Kind::proved; }
  bool refuted() const { return kind == Kind::refuted; }
  bool unknown() const { return kind == Kind::unknown; }

  static Verdict make_proved(std::size_t explored = 0) {
    Verdict v;
    v.kind = Kind::proved;
    v.explored = explored;
    return v;
  }
  static Verdict make_refuted(Term witness, Trace trace, std::size_t explored = 0) {
    Verdict v;
    v.kind = Kind::refuted;
    v.witness = std::move(witness);
    v.trace = std::move(trace);
    v.explored = explored;
    return v;
  }
  static Verdict make_unknown(std::size_t explored) {
    Verdict v;
    v.explored = explored;
    return v;
  }
};

inline const char* verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::proved: return "Proved";
    case Verdict::Kind::refuted: return "Refuted";
    case Verdict::Kind::unknown: return "Unknown";
  }
  return "?";
}

}  // namespace lcc
