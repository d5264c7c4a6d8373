#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lcc/completion.hpp"
#include "lcc/equivalence.hpp"
#include "lcc/per_model.hpp"
#include "lcc/rewrite.hpp"
#include "lcc/syntax.hpp"
#include "lcc/term.hpp"
#include "lcc/verdict.hpp"

namespace {

using namespace lcc;

// Exit codes: 0 success/Proved, 1 Refuted, 2 Unknown (fuel), 3 parse or
// signature error.
constexpr int kExitProved = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitError = 3;

int verdict_exit_code(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::proved: return kExitProved;
    case Verdict::Kind::refuted: return kExitRefuted;
    case Verdict::Kind::unknown: return kExitUnknown;
  }
  return kExitError;
}

std::size_t default_fuel() {
  if (const char* env = std::getenv("LCC_DEFAULT_FUEL")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return static_cast<std::size_t>(parsed);
  }
  return 1000;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

SourceUnit load_unit(const std::string& path) { return parse_unit(read_file(path)); }

// Loads a two-term query from two files. Explicit declarations must agree;
// otherwise the auto-declared union (left file first) is used.
struct PairInput {
  Signature signature;
  Term left;
  Term right;
};

PairInput load_pair(const std::string& left_path, const std::string& right_path) {
  SourceUnit left = parse_unit(read_file(left_path));
  SourceUnit right = parse_unit(read_file(right_path));
  if (left.signature_declared && right.signature_declared) {
    if (!(left.signature == right.signature))
      throw SignatureError("the two files declare different signatures");
    return {left.signature, left.term, right.term};
  }
  if (left.signature_declared) {
    validate_over(left.signature, right.term);
    return {left.signature, left.term, right.term};
  }
  if (right.signature_declared) {
    validate_over(right.signature, left.term);
    return {right.signature, left.term, right.term};
  }
  std::vector<Name> merged = left.signature.constructors();
  for (const Name& c : right.signature.constructors())
    if (std::find(merged.begin(), merged.end(), c) == merged.end()) merged.push_back(c);
  return {Signature(merged), left.term, right.term};
}

void print_verdict(const Verdict& v, bool json_traces) {
  std::cout << verdict_name(v.kind);
  if (v.unknown()) std::cout << " (explored " << v.explored << " contractions)";
  std::cout << "\n";
  if (v.refuted() && v.witness) {
    std::cout << "witness: " << print(*v.witness) << "\n";
    if (v.witness_right) std::cout << "witness (right): " << print(*v.witness_right) << "\n";
  }
  auto dump_trace = [&](const Trace& trace, const char* label) {
    if (trace.empty()) return;
    std::cout << label << "\n";
    if (json_traces)
      std::cout << trace_to_json_lines(trace);
    else
      for (const Step& s : trace) std::cout << "  " << step_to_text(s) << "\n";
  };
  dump_trace(v.trace, "trace:");
  dump_trace(v.right_trace, "trace (right):");
}

Context parse_context(const std::string& spec) {
  std::vector<Name> vars;
  std::string current;
  for (char c : spec) {
    if (c == ',') {
      if (!current.empty()) vars.push_back(current);
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current += c;
    }
  }
  if (!current.empty()) vars.push_back(current);
  return Context(std::move(vars));
}

std::pair<int, int> parse_range(const std::string& spec) {
  const auto dots = spec.find("..");
  if (dots == std::string::npos) {
    const int n = std::stoi(spec);
    return {n, n};
  }
  return {std::stoi(spec.substr(0, dots)), std::stoi(spec.substr(dots + 2))};
}

// Builds a signature of n fresh constructors K1..Kn for the diagram suite.
Signature diagram_signature(int n) {
  std::vector<Name> ctors;
  for (int i = 1; i <= n; ++i) ctors.push_back("K" + std::to_string(i));
  return Signature(std::move(ctors));
}

int run(int argc, char** argv) {
  CLI::App cli{"lambda calculus with constructors"};
  cli.require_subcommand(1);
  const std::size_t env_fuel = default_fuel();

  std::string file, file_right, rules_name = "all", trace_mode = "text", ctx_spec, range_spec;
  std::size_t fuel = env_fuel;
  std::size_t hdef_fuel = 2000;
  bool figure3 = false;

  auto add_fuel = [&](CLI::App* cmd) { cmd->add_option("--fuel", fuel, "contraction budget"); };

  auto* cmd_reduce = cli.add_subcommand("reduce", "reduce a term to normal form");
  cmd_reduce->add_option("file", file)->required();
  add_fuel(cmd_reduce);
  cmd_reduce->add_option("--rules", rules_name, "all | lcm | cc");
  cmd_reduce->add_option("--trace", trace_mode, "json | text");

  auto* cmd_cnf = cli.add_subcommand("normalize-cc", "CaseCase normal form");
  cmd_cnf->add_option("file", file)->required();

  auto* cmd_complete = cli.add_subcommand("complete", "case-completion");
  cmd_complete->add_option("file", file)->required();

  auto* cmd_defined = cli.add_subcommand("defined", "match-failure scan");
  cmd_defined->add_option("file", file)->required();

  auto* cmd_hdef = cli.add_subcommand("hdef", "hereditary definedness (bounded)");
  cmd_hdef->add_option("file", file)->required();
  add_fuel(cmd_hdef);
  cmd_hdef->add_option("--trace", trace_mode, "json | text");

  auto* cmd_equiv = cli.add_subcommand("equiv", "bounded conversion check");
  cmd_equiv->add_option("left", file)->required();
  cmd_equiv->add_option("right", file_right)->required();
  add_fuel(cmd_equiv);
  cmd_equiv->add_option("--rules", rules_name, "all | lcm | cc");
  cmd_equiv->add_option("--trace", trace_mode, "json | text");

  auto* cmd_interp = cli.add_subcommand("interp", "PER-model interpretation");
  cmd_interp->add_option("file", file)->required();
  cmd_interp->add_option("--ctx", ctx_spec, "comma-separated context variables");
  cmd_interp->add_flag("--figure3", figure3, "build compositionally from the morphism algebra");

  auto* cmd_diagrams = cli.add_subcommand("check-diagrams", "model diagrams D1..D6");
  cmd_diagrams->add_option("--n-range", range_spec, "signature sizes, e.g. 1..3")->required();
  add_fuel(cmd_diagrams);

  auto* cmd_sound = cli.add_subcommand("check-soundness", "one-step soundness of the model");
  cmd_sound->add_option("file", file)->required();
  cmd_sound->add_option("--ctx", ctx_spec, "comma-separated context variables");
  add_fuel(cmd_sound);

  auto* cmd_compl = cli.add_subcommand("check-completeness", "completion-vs-original conversion");
  cmd_compl->add_option("left", file)->required();
  cmd_compl->add_option("right", file_right)->required();
  add_fuel(cmd_compl);
  cmd_compl->add_option("--hdef-fuel", hdef_fuel, "hereditary-definedness budget");

  auto* cmd_match = cli.add_subcommand("compile-match", "compile a depth-1 match program");
  cmd_match->add_option("file", file)->required();

  auto* cmd_measure = cli.add_subcommand("measure", "structural measure");
  cmd_measure->add_option("file", file)->required();

  CLI11_PARSE(cli, argc, argv);
  const bool json_traces = trace_mode == "json";

  if (cmd_reduce->parsed()) {
    SourceUnit unit = load_unit(file);
    auto rules = RuleSet::from_name(rules_name);
    if (!rules) throw Error("unknown rule set: " + rules_name);
    ReduceResult result = reduce(unit.term, *rules, fuel);
    if (json_traces) {
      std::cout << trace_to_json_lines(result.trace);
      nlohmann::ordered_json j;
      j["result"] = print(result.term);
      j["steps"] = result.trace.size();
      j["exhausted"] = result.exhausted;
      j["constructors"] = unit.signature.constructors();
      std::cout << j.dump() << "\n";
    } else {
      for (const Step& s : result.trace) std::cout << step_to_text(s) << "\n";
      std::cout << print_unit(unit.signature, result.term);
      if (result.exhausted) std::cout << "fuel exhausted after " << result.trace.size()
                                      << " steps\n";
    }
    return result.exhausted ? kExitUnknown : kExitProved;
  }
  if (cmd_cnf->parsed()) {
    SourceUnit unit = load_unit(file);
    std::cout << print_unit(unit.signature, normalize_cc(unit.term));
    return kExitProved;
  }
  if (cmd_complete->parsed()) {
    SourceUnit unit = load_unit(file);
    std::cout << print_unit(unit.signature, complete(unit.signature, unit.term));
    return kExitProved;
  }
  if (cmd_defined->parsed()) {
    SourceUnit unit = load_unit(file);
    DefinednessReport report = is_defined(unit.term);
    if (report.defined) {
      std::cout << "defined\n";
      return kExitProved;
    }
    std::cout << "undefined\n";
    for (const Position& p : report.failure_positions)
      std::cout << "failure @ " << p.to_string() << "\n";
    return kExitRefuted;
  }
  if (cmd_hdef->parsed()) {
    SourceUnit unit = load_unit(file);
    Verdict v = is_hereditarily_defined(unit.term, fuel);
    print_verdict(v, json_traces);
    return verdict_exit_code(v);
  }
  if (cmd_equiv->parsed()) {
    PairInput pair = load_pair(file, file_right);
    auto rules = RuleSet::from_name(rules_name);
    if (!rules) throw Error("unknown rule set: " + rules_name);
    Verdict v = convertible(EquivQuery{pair.left, pair.right, fuel, *rules});
    print_verdict(v, json_traces);
    return verdict_exit_code(v);
  }
  if (cmd_interp->parsed()) {
    SourceUnit unit = load_unit(file);
    Context ctx = parse_context(ctx_spec);
    MorphismRep m = figure3 ? interpret_figure3(unit.signature, ctx, unit.term)
                            : interpret(unit.signature, ctx, unit.term);
    std::cout << print_unit(unit.signature, m.rep);
    return kExitProved;
  }
  if (cmd_diagrams->parsed()) {
    auto [lo, hi] = parse_range(range_spec);
    if (lo < 1 || hi < lo) throw Error("bad --n-range: " + range_spec);
    int exit_code = kExitProved;
    for (int n = lo; n <= hi; ++n) {
      const Signature sig = diagram_signature(n);
      for (Diagram d : {Diagram::d1, Diagram::d2, Diagram::d3, Diagram::d4, Diagram::d5,
                        Diagram::d6}) {
        Verdict v = check_diagram(sig, d, fuel);
        std::cout << "n=" << n << " " << diagram_name(d) << ": " << verdict_name(v.kind) << "\n";
        if (v.refuted()) exit_code = kExitRefuted;
        else if (v.unknown() && exit_code == kExitProved) exit_code = kExitUnknown;
      }
    }
    return exit_code;
  }
  if (cmd_sound->parsed()) {
    SourceUnit unit = load_unit(file);
    Context ctx = parse_context(ctx_spec);
    Verdict v = check_soundness(unit.signature, ctx, unit.term, fuel);
    std::cout << verdict_name(v.kind) << " ("
              << enumerate_redexes(unit.term, RuleSet::all()).size() << " reducts checked)\n";
    return verdict_exit_code(v);
  }
  if (cmd_compl->parsed()) {
    PairInput pair = load_pair(file, file_right);
    Verdict v = check_completeness_pair(pair.signature, pair.left, pair.right, fuel, hdef_fuel);
    print_verdict(v, json_traces);
    return verdict_exit_code(v);
  }
  if (cmd_match->parsed()) {
    MatchUnit unit = parse_match_unit(read_file(file));
    std::cout << print_unit(unit.signature, compile_match(unit.signature, unit.program));
    return kExitProved;
  }
  if (cmd_measure->parsed()) {
    SourceUnit unit = load_unit(file);
    std::cout << measure_to_string(measure(unit.term)) << "\n";
    return kExitProved;
  }
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << error_to_json_line(e) << "\n";
    return kExitError;
  } catch (const Error& e) {
    std::cerr << error_to_json_line(std::string(e.what())) << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << error_to_json_line(std::string(e.what())) << "\n";
    return kExitError;
  }
}
