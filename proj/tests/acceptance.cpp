// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code 0 iff everything passed.

#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "lcc/completion.hpp"
#include "lcc/equivalence.hpp"
#include "lcc/per_model.hpp"
#include "lcc/rewrite.hpp"
#include "lcc/syntax.hpp"
#include "lemma_suites.hpp"

using namespace lcc;
using testsuites::Outcome;

namespace {

struct Reporter {
  bool all_passed = true;

  template <typename F>
  void criterion(int number, const std::string& label, double seconds_limit, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > seconds_limit) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("time limit exceeded");
    }
    all_passed = all_passed && ok;
    std::printf("[%s] criterion %2d: %-38s (%6.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                label.c_str(), elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
  }
};

const Signature kSig({"C0", "S"});
const Signature kSig12({"C1", "C2"});

// --- criterion 1 -----------------------------------------------------------
bool pred_trace(std::string& detail) {
  Term pred = parse_term(kSig, "\\x. {C0 -> C0; S -> \\y. y} . x");
  Term t = app(pred, app(cons("S"), var("m")));
  ReduceResult r = reduce(t, RuleSet::all(), 1000);
  const std::vector<Rule> expected = {Rule::app_lam, Rule::case_app, Rule::case_cons,
                                      Rule::app_lam};
  if (r.exhausted || !alpha_eq(r.term, var("m")) || r.trace.size() != expected.size()) {
    detail = "wrong result or trace length";
    return false;
  }
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (r.trace[i].rule != expected[i]) {
      detail = "rule mismatch at step " + std::to_string(i + 1);
      return false;
    }
  return true;
}

// --- criterion 2 -----------------------------------------------------------
bool rule_golden(std::string& detail) {
  struct Golden {
    Rule rule;
    Term input;
    Term expected;
  };
  CaseBinding theta({{"C0", cons("C0")}, {"S", lam("y", var("y"))}});
  CaseBinding phi({{"S", var("t")}});
  const std::vector<Golden> goldens = {
      {Rule::app_lam, parse_term(kSig, "(\\x. x y) u"), parse_term(kSig, "u y")},
      {Rule::lam_app, parse_term(kSig, "\\x. f x"), var("f")},
      {Rule::case_cons, case_of(theta, cons("S")), lam("y", var("y"))},
      {Rule::case_app, case_of(theta, app(var("t"), var("u"))),
       app(case_of(theta, var("t")), var("u"))},
      {Rule::case_lam, case_of(theta, lam("x", var("x"))),
       lam("x", case_of(theta, var("x")))},
      {Rule::case_case, case_of(theta, case_of(phi, var("u"))),
       case_of(compose_bindings(theta, phi), var("u"))},
  };
  for (const Golden& g : goldens) {
    if (head_redex_rule(g.input) != g.rule) {
      detail = std::string("head redex is not ") + std::string(rule_name(g.rule));
      return false;
    }
    if (!alpha_eq(apply_step(g.input, g.rule, Position::root()), g.expected)) {
      detail = std::string("wrong contractum for ") + std::string(rule_name(g.rule));
      return false;
    }
  }
  return true;
}

// --- criterion 3 -----------------------------------------------------------
bool cc_normalization(std::string& detail) {
  testgen::Rng rng(930301);
  testgen::GenConfig cfg;
  cfg.free_pool = {"x", "y"};
  cfg.case_weight = 40;
  for (int i = 0; i < 1000; ++i) {
    Term t = testgen::random_term(rng, cfg, 50);
    Term cnf = normalize_cc(t);
    if (!alpha_eq(normalize_cc(cnf), cnf) ||
        !enumerate_redexes(cnf, RuleSet::cc_only()).empty()) {
      detail = "cnf not idempotent at sample " + std::to_string(i);
      return false;
    }
    ReduceResult oracle = reduce(t, RuleSet::cc_only(), 1u << 22);
    if (oracle.exhausted || !alpha_eq(cnf, oracle.term)) {
      detail = "cnf disagrees with exhaustive CaseCase reduction at sample " + std::to_string(i);
      return false;
    }
    for (const Step& s : oracle.trace)
      if (!(measure(s.before) > measure(s.after))) {
        detail = "measure did not decrease at sample " + std::to_string(i);
        return false;
      }
  }
  return true;
}

// --- criterion 4 -----------------------------------------------------------
// Runs all five lemma checks as stated. The postponement component is known
// to be falsifiable: a CaseApp/CaseLam head step at the inner case of a
// case stack merges the enclosing binding on one side only, and merged
// bindings cannot be un-merged (minimal instance:
// {C0 -> x} . ({C0 -> y} . (\w. z)) with the inner CaseLam). The check is
// kept faithful and the first falsifying sample is reported.
bool completion_lemmas(std::string& detail) {
  testgen::Rng rng(930401);
  testgen::GenConfig cfg;
  cfg.free_pool = {"x", "y"};
  cfg.case_weight = 35;
  int unknowns = 0;
  int passed[5] = {0, 0, 0, 0, 0};
  int postponement_failures = 0;
  int postponement_off = 0;
  std::string first_failure;
  for (int i = 0; i < 1000; ++i) {
    Term t = testgen::random_defined_term(rng, cfg, 25);
    if (testsuites::red_cpl_forward(cfg.sig, t) != Outcome::pass) {
      detail = "red-cpl failed at sample " + std::to_string(i);
      return false;
    }
    ++passed[0];
    if (testsuites::cpl_red_part1(cfg.sig, t) != Outcome::pass) {
      detail = "cpl-red part 1 failed at sample " + std::to_string(i);
      return false;
    }
    ++passed[1];
    if (testsuites::cpl_red_part2(cfg.sig, t) != Outcome::pass) {
      detail = "cpl-red part 2 failed at sample " + std::to_string(i);
      return false;
    }
    ++passed[2];
    if (testsuites::cnf_cpl_commutation(cfg.sig, t) != Outcome::pass) {
      detail = "cnf-cpl failed at sample " + std::to_string(i);
      return false;
    }
    ++passed[3];
    Outcome postponement = testsuites::lcm_cnf_all_steps(t, 200);
    if (postponement == Outcome::unknown) {
      ++unknowns;
      postponement = testsuites::lcm_cnf_all_steps(t, 2000);
    }
    if (postponement == Outcome::pass) {
      ++passed[4];
    } else {
      if (postponement == Outcome::fail) ++postponement_failures;
      ++postponement_off;
      if (first_failure.empty()) first_failure = print(t);
    }
  }
  std::string tally = "red-cpl " + std::to_string(passed[0]) + "/1000, cpl-red-1 " +
                      std::to_string(passed[1]) + "/1000, cpl-red-2 " +
                      std::to_string(passed[2]) + "/1000, cnf-cpl " +
                      std::to_string(passed[3]) + "/1000, postponement " +
                      std::to_string(passed[4]) + "/1000 (falsified on " +
                      std::to_string(postponement_failures) + ", unresolved on " +
                      std::to_string(postponement_off - postponement_failures) +
                      ", retried unknowns " + std::to_string(unknowns) + ")";
  if (postponement_off > 0) {
    detail = tally + "; postponement falsified (CaseApp/CaseLam steps in merged stacks), e.g. " +
             first_failure;
    return false;
  }
  if (unknowns >= 10) {
    detail = tally + "; unknown rate too high";
    return false;
  }
  detail = tally;
  return true;
}

// --- criterion 5 -----------------------------------------------------------
bool confluence_spot_check(std::string& detail) {
  testgen::Rng rng(930501);
  testgen::GenConfig cfg;
  cfg.free_pool = {"x", "y"};
  for (int i = 0; i < 500; ++i) {
    Term t = testgen::random_term(rng, cfg, 20);
    auto redexes = enumerate_redexes(t, RuleSet::all());
    std::vector<Term> reducts;
    reducts.reserve(redexes.size());
    for (const auto& [rule, pos] : redexes) reducts.push_back(apply_step(t, rule, pos));
    for (std::size_t a = 0; a < reducts.size(); ++a)
      for (std::size_t b = a + 1; b < reducts.size(); ++b)
        if (!convertible(reducts[a], reducts[b], 300).proved()) {
          detail = "pair failed to join at sample " + std::to_string(i);
          return false;
        }
  }
  return true;
}

// --- criterion 6 -----------------------------------------------------------
bool diagram_suite(std::string& detail) {
  for (int n = 1; n <= 3; ++n) {
    std::vector<Name> ctors;
    for (int i = 1; i <= n; ++i) ctors.push_back("K" + std::to_string(i));
    const Signature sig(ctors);
    for (Diagram d : {Diagram::d1, Diagram::d2, Diagram::d3, Diagram::d4, Diagram::d5,
                      Diagram::d6}) {
      if (!check_diagram(sig, d, 6000).proved()) {
        detail = std::string(diagram_name(d)) + " not proved for n=" + std::to_string(n);
        return false;
      }
    }
  }
  return true;
}

// --- criterion 7 -----------------------------------------------------------
bool soundness_harness(std::string& detail) {
  struct Fixed {
    Rule rule;
    Context ctx;
    Term term;
  };
  const std::vector<Fixed> corpus = {
      {Rule::app_lam, Context{}, parse_term(kSig, "(\\x. x) C0")},
      {Rule::lam_app, Context({"y"}), parse_term(kSig, "\\x. y x")},
      {Rule::case_cons, Context{}, parse_term(kSig, "{C0 -> C0; S -> \\y. y} . S")},
      {Rule::case_app, Context({"x"}), parse_term(kSig, "{C0 -> C0; S -> \\y. y} . (S x)")},
      {Rule::case_lam, Context({"z"}), parse_term(kSig, "{C0 -> z} . (\\w. w)")},
      {Rule::case_case, Context({"x", "y"}), parse_term(kSig, "{C0 -> y} . ({S -> x} . x)")},
  };
  for (const Fixed& f : corpus) {
    if (head_redex_rule(f.term) != f.rule) {
      detail = std::string("fixed corpus head redex mismatch for ") +
               std::string(rule_name(f.rule));
      return false;
    }
    if (!check_soundness(kSig, f.ctx, f.term, 500).proved()) {
      detail = std::string("not proved on the ") + std::string(rule_name(f.rule)) + " instance";
      return false;
    }
  }
  testgen::Rng rng(930701);
  testgen::GenConfig cfg;
  cfg.free_pool = {"x", "y"};
  const Context ctx({"x", "y"});
  for (int i = 0; i < 200; ++i) {
    Term t = testgen::random_term(rng, cfg, 15);
    if (!check_soundness(kSig, ctx, t, 500).proved()) {
      detail = "not proved at random sample " + std::to_string(i);
      return false;
    }
  }
  return true;
}

// --- criterion 8 -----------------------------------------------------------
bool completeness_harness(std::string& detail) {
  testgen::Rng rng(930801);
  testgen::GenConfig cfg;
  cfg.free_pool = {"x"};
  for (int i = 0; i < 300; ++i) {
    Term ancestor = testgen::random_hereditarily_defined_term(rng, cfg, 12, 2000);
    Term t1 = testgen::random_forward_reduction(rng, ancestor, 3);
    Term t2 = testgen::random_forward_reduction(rng, ancestor, 3);
    if (!check_completeness_pair(cfg.sig, t1, t2, 600).proved()) {
      detail = "pair not proved at sample " + std::to_string(i);
      return false;
    }
  }
  // the two match failures: completions convertible, originals distinct NFs
  Term left = parse_term(kSig12, "{C1 -> \\y. y y} . C2");
  Term right = parse_term(kSig12, "{C2 -> \\y. y} . C1");
  if (!convertible(complete(kSig12, left), complete(kSig12, right), 200).proved()) {
    detail = "completions of the failure pair did not join";
    return false;
  }
  Verdict originals = convertible(left, right, 200);
  if (!originals.refuted() || !originals.witness || !originals.witness_right ||
      !alpha_eq(*originals.witness, left) || !alpha_eq(*originals.witness_right, right)) {
    detail = "failure pair not refuted as distinct normal forms";
    return false;
  }
  return true;
}

// --- criterion 9 -----------------------------------------------------------
bool interpretation_oracle(std::string& detail) {
  testgen::Rng rng(930901);
  testgen::GenConfig cfg;
  cfg.sig = kSig12;
  cfg.free_pool = {"x", "y"};
  const Context ctx({"x", "y"});
  for (int i = 0; i < 200; ++i) {
    Term t = testgen::random_term(rng, cfg, 10);
    MorphismRep direct = interpret(cfg.sig, ctx, t);
    MorphismRep composed = interpret_figure3(cfg.sig, ctx, t);
    if (!convertible(direct.rep, composed.rep, 500).proved()) {
      detail = "interpretations did not join at sample " + std::to_string(i);
      return false;
    }
  }
  return true;
}

// --- criterion 10 ----------------------------------------------------------
std::vector<std::string> lex_token_texts(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      tokens.push_back("->");
      i += 2;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      tokens.push_back(text.substr(i, j - i));
      i = j;
      continue;
    }
    tokens.push_back(std::string(1, c));
    ++i;
  }
  return tokens;
}

bool parser_round_trip(std::string& detail) {
  testgen::Rng rng(931001);
  testgen::GenConfig cfg;
  cfg.free_pool = {"x", "y", "z"};
  const auto dir = std::filesystem::temp_directory_path() / "lcc_golden_corpus";
  std::filesystem::create_directories(dir);
  for (int i = 0; i < 200; ++i) {
    Term t = testgen::random_term(rng, cfg, 40);
    const std::string printed = print(t);
    // re-space the token stream: newlines and stray blanks must not matter
    std::string noisy;
    for (const std::string& tok : lex_token_texts(printed)) {
      if (!noisy.empty()) {
        const int pad = static_cast<int>(rng() % 3);
        for (int s = 0; s < pad; ++s) noisy += ' ';
        noisy += (rng() % 11 == 0) ? "\n" : " ";
      }
      noisy += tok;
    }
    const auto path = dir / ("term_" + std::to_string(i) + ".lcc");
    {
      std::ofstream out(path);
      out << "constructors C0, S;\n" << noisy << "\n";
    }
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    SourceUnit unit = parse_unit(buffer.str());
    if (!alpha_eq(unit.term, t)) {
      detail = "parse(print) differs at file " + std::to_string(i);
      return false;
    }
    if (lex_token_texts(print(unit.term)) != lex_token_texts(noisy)) {
      detail = "print(parse) not whitespace-identical at file " + std::to_string(i);
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  Reporter reporter;
  reporter.criterion(1, "predecessor reduction trace", 1.0, pred_trace);
  reporter.criterion(2, "per-rule golden contractions", 1.0, rule_golden);
  reporter.criterion(3, "CaseCase normalization (1000 terms)", 30.0, cc_normalization);
  reporter.criterion(4, "completion lemma suite (1000 terms)", 120.0, completion_lemmas);
  reporter.criterion(5, "confluence spot-check (500 terms)", 120.0, confluence_spot_check);
  reporter.criterion(6, "model diagrams D1..D6, n=1..3", 60.0, diagram_suite);
  reporter.criterion(7, "soundness harness (6+200 terms)", 120.0, soundness_harness);
  reporter.criterion(8, "completeness harness (300 pairs)", 120.0, completeness_harness);
  reporter.criterion(9, "interpretation oracle (200 terms)", 120.0, interpretation_oracle);
  reporter.criterion(10, "parser round-trip (200 files)", 10.0, parser_round_trip);
  if (!reporter.all_passed) {
    std::cout << "acceptance: FAILED\n";
    return 1;
  }
  std::cout << "acceptance: all criteria passed\n";
  return 0;
}
