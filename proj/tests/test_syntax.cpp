#include <doctest.h>

#include "generators.hpp"
#include "lcc/rewrite.hpp"
#include "lcc/syntax.hpp"

using namespace lcc;

namespace {
const Signature kSig({"C0", "S"});
}

TEST_CASE("parsing precedence and shapes") {
  SourceUnit u1 = parse_unit("\\x. x y");
  CHECK(alpha_eq(u1.term, lam("x", app(var("x"), var("y")))));
  CHECK_FALSE(u1.signature_declared);

  SourceUnit u2 = parse_unit("{C0 -> C0; S -> \\y. y} . (S m)");
  Term expected = case_of(CaseBinding({{"C0", cons("C0")}, {"S", lam("y", var("y"))}}),
                          app(cons("S"), var("m")));
  CHECK(alpha_eq(u2.term, expected));
  CHECK(u2.signature.constructors() == std::vector<Name>{"C0", "S"});

  // application binds tighter than the case dot: {..} . S m is ({..} . S) m
  SourceUnit u3 = parse_unit("{C0 -> C0} . S m");
  const auto* a = as_app(u3.term);
  REQUIRE(a != nullptr);
  CHECK(as_case(a->fun) != nullptr);

  // a pure lambda file gets the default signature
  SourceUnit u4 = parse_unit("\\x. x");
  CHECK(u4.signature.constructors() == std::vector<Name>{"C0"});

  // an explicit declaration fixes the ordering even for unused constructors
  SourceUnit u5 = parse_unit("constructors A, B, Z;\nB");
  CHECK(u5.signature_declared);
  CHECK(u5.signature.constructors() == std::vector<Name>{"A", "B", "Z"});
  CHECK(u5.signature.canonical_failure_head() == "A");
}

TEST_CASE("parse errors carry positions and reasons") {
  CHECK_THROWS_AS(parse_unit("\\x."), ParseError);
  CHECK_THROWS_AS(parse_unit("(x"), ParseError);
  CHECK_THROWS_AS(parse_unit("constructors C0; {C1 -> x} . y"), ParseError);  // undeclared
  CHECK_THROWS_AS(parse_unit("{C0 -> x; C0 -> y} . z"), ParseError);          // duplicate branch
  CHECK_THROWS_AS(parse_unit("x $"), ParseError);
  try {
    parse_unit("\\x.\n  x )");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column > 1);
  }
}

TEST_CASE("printing round-trips the worked term exactly") {
  const std::string text = "{C0 -> C0; S -> \\y. y} . (S m)";
  SourceUnit unit = parse_unit(text);
  CHECK(print(unit.term) == text);

  // nested case scrutinees need no parentheses
  const std::string nested = "{C0 -> a} . {S -> b} . x";
  SourceUnit u2 = parse_unit(nested);
  const auto* outer = as_case(u2.term);
  REQUIRE(outer != nullptr);
  CHECK(as_case(outer->scrutinee) != nullptr);
  CHECK(print(u2.term) == nested);
}

TEST_CASE("the parser rejects garbage without crashing") {
  testgen::Rng rng(507);
  const std::string alphabet = "\\.(){};,->xyzCS01 \n\tconstructors match with |";
  int parsed = 0;
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    const std::size_t len = rng() % 40;
    for (std::size_t j = 0; j < len; ++j) text += alphabet[rng() % alphabet.size()];
    try {
      SourceUnit unit = parse_unit(text);
      ++parsed;
      // whatever parses must round-trip
      CHECK(alpha_eq(parse_term(unit.signature, print(unit.term)), unit.term));
    } catch (const ParseError&) {
      // rejected with a diagnostic: fine
    }
  }
  CHECK(parsed > 0);
}

TEST_CASE("parse after print is the alpha identity") {
  testgen::Rng rng(501);
  testgen::GenConfig cfg;
  cfg.free_pool = {"x", "y", "z"};
  for (int i = 0; i < 300; ++i) {
    Term t = testgen::random_term(rng, cfg, 60);
    CAPTURE(i);
    CAPTURE(print(t));
    Term back = parse_term(cfg.sig, print(t));
    CHECK(alpha_eq(back, t));
  }
}

TEST_CASE("compile-match builds the constants-plus-commutation form") {
  MatchUnit unit = parse_match_unit("constructors C0, S;\nmatch x with C0 -> C0 | S y -> y");
  Term compiled = compile_match(unit.signature, unit.program);
  CHECK(alpha_eq(compiled, parse_term(kSig, "{C0 -> C0; S -> \\y. y} . x")));

  MatchUnit single = parse_match_unit("match x with C0 -> C0");
  CHECK(alpha_eq(compile_match(single.signature, single.program),
                 parse_term(Signature({"C0"}), "{C0 -> C0} . x")));

  // the compiled predecessor recovers S C0 from S (S C0) in four steps
  Term pred = lam("x", compiled);
  Term applied = app(pred, parse_term(kSig, "S (S C0)"));
  ReduceResult r = reduce(applied, RuleSet::all(), 4);
  CHECK_FALSE(r.exhausted);
  CHECK(alpha_eq(r.term, parse_term(kSig, "S C0")));
  REQUIRE(r.trace.size() == 4);
  CHECK(r.trace[0].rule == Rule::app_lam);
  CHECK(r.trace[1].rule == Rule::case_app);
  CHECK(r.trace[2].rule == Rule::case_cons);
  CHECK(r.trace[3].rule == Rule::app_lam);
}

TEST_CASE("compile-match validates clauses") {
  MatchUnit dup = parse_match_unit("constructors C0;\nmatch x with C0 -> x | C0 -> x");
  CHECK_THROWS_AS(compile_match(dup.signature, dup.program), PreconditionError);
}

TEST_CASE("match compilation substitutes clause parameters") {
  testgen::Rng rng(503);
  testgen::GenConfig cfg;
  cfg.free_pool = {"u", "v"};
  for (int i = 0; i < 60; ++i) {
    // clause S a b -> body, scrutinee S u v
    Term body = testgen::random_term(rng, cfg, 8);
    MatchProgram program;
    program.scrutinee = app(app(cons("S"), var("u")), var("v"));
    program.clauses.push_back({"S", {"a", "b"}, body});
    Term compiled = compile_match(kSig, program);
    ReduceResult r = reduce(compiled, RuleSet::all(), 50);
    Term expected = substitute(substitute(body, "a", var("u")), "b", var("v"));
    ReduceResult expected_nf = reduce(expected, RuleSet::all(), 50);
    CAPTURE(i);
    if (!r.exhausted && !expected_nf.exhausted) CHECK(alpha_eq(r.term, expected_nf.term));
  }
}

TEST_CASE("trace serialization formats") {
  Term before = parse_term(kSig, "{C0 -> C0; S -> \\y. y} . (S m)");
  Term after = apply_step(before, Rule::case_app, Position::root());
  Step root_step{Rule::case_app, Position::root(), before, after};
  CHECK(step_to_json_line(root_step) ==
        R"({"rule":"CA","pos":[],"term":"{C0 -> C0; S -> \\y. y} . S m"})");

  Position scrut = Position::root().child({PathStep::Kind::scrutinee});
  Term inner_before = case_of(CaseBinding({{"C0", var("a")}}), app(lam("x", var("x")), var("u")));
  Term inner_after = apply_step(inner_before, Rule::app_lam, scrut);
  Step inner{Rule::app_lam, scrut, inner_before, inner_after};
  CHECK(step_to_json_line(inner) == R"({"rule":"AL","pos":["scrutinee"],"term":"{C0 -> a} . u"})");

  CHECK(error_to_json_line("boom") == R"({"error":"boom"})");
}
