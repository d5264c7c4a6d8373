#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lcc/rewrite.hpp"
#include "lcc/term.hpp"

namespace lcc {

struct ParseError : Error {
  ParseError(const std::string& message, int line, int column)
      : Error(message), line(line), column(column) {}
  int line;
  int column;
};

/// One parsed input file: an optional `constructors ...;` declaration and a
/// single term. Without a declaration, constructors are auto-declared in
/// first-occurrence order; a file with no constructors at all gets the
/// default signature C0 so that c1-dependent operations stay total.
struct SourceUnit {
  Signature signature;
  Term term;
  bool signature_declared = false;
};

SourceUnit parse_unit(std::string_view text);

/// Parses a term whose constructors must all be declared in `sig`.
Term parse_term(const Signature& sig, std::string_view text);

std::string print(const Term& t);
std::string print(const CaseBinding& b);
std::string print_unit(const Signature& sig, const Term& t);

struct MatchClause {
  Name ctor;
  std::vector<Name> params;
  Term body;
};

/// Depth-1 match program: a scrutinee and clauses `C x1 ... xk -> body`.
struct MatchProgram {
  Term scrutinee;
  std::vector<MatchClause> clauses;
};

struct MatchUnit {
  Signature signature;
  MatchProgram program;
  bool signature_declared = false;
};

MatchUnit parse_match_unit(std::string_view text);

/// Each clause (c, x1...xk, body) becomes the branch c -> \x1...xk. body; the
/// whole program is {branches} applied to the scrutinee, constructor
/// arguments being distributed by CaseApp at reduction time.
Term compile_match(const Signature& sig, const MatchProgram& program);

/// Line-oriented trace serialization: one JSON object per step with the rule
/// short name, the position path and the printed after-term.
std::string step_to_json_line(const Step& step);
std::string trace_to_json_lines(const Trace& trace);
std::string step_to_text(const Step& step);

std::string error_to_json_line(const std::string& message);
std::string error_to_json_line(const ParseError& error);

}  // namespace lcc
