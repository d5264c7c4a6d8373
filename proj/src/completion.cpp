#include "lcc/completion.hpp"

#include <string>
#include <unordered_map>

namespace lcc {

namespace {

void scan_failures(const Term& t, Position& pos, std::vector<Position>& out) {
  if (const auto* c = as_case(t)) {
    if (const auto* k = as_cons(c->scrutinee))
      if (!c->binding.binds(k->name)) out.push_back(pos);
    for (const auto& [ctor, body] : c->binding.branches()) {
      pos.path.push_back({PathStep::Kind::branch, ctor});
      scan_failures(body, pos, out);
      pos.path.pop_back();
    }
    pos.path.push_back({PathStep::Kind::scrutinee});
    scan_failures(c->scrutinee, pos, out);
    pos.path.pop_back();
  } else if (const auto* a = as_app(t)) {
    pos.path.push_back({PathStep::Kind::fun});
    scan_failures(a->fun, pos, out);
    pos.path.back() = {PathStep::Kind::arg};
    scan_failures(a->arg, pos, out);
    pos.path.pop_back();
  } else if (const auto* l = as_lam(t)) {
    pos.path.push_back({PathStep::Kind::body});
    scan_failures(l->body, pos, out);
    pos.path.pop_back();
  }
}

struct ReductNode {
  Term term;
  int parent;
  Rule rule{};
  Position pos;
};

Trace path_to(const std::vector<ReductNode>& nodes, int idx) {
  std::vector<int> chain;
  for (int i = idx; i >= 0; i = nodes[i].parent) chain.push_back(i);
  Trace trace;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const ReductNode& n = nodes[*it];
    if (n.parent < 0) continue;
    trace.push_back(Step{n.rule, n.pos, nodes[n.parent].term, n.term});
  }
  return trace;
}

}  // namespace

DefinednessReport is_defined(const Term& t) {
  DefinednessReport report;
  Position pos;
  scan_failures(t, pos, report.failure_positions);
  report.defined = report.failure_positions.empty();
  return report;
}

Verdict is_hereditarily_defined(const Term& t, std::size_t fuel) {
  std::vector<ReductNode> nodes;
  std::unordered_map<std::string, int> visited;
  nodes.push_back({t, -1, Rule::app_lam, {}});
  visited.emplace(alpha_key(t), 0);

  std::size_t explored = 0;
  for (std::size_t qi = 0; qi < nodes.size(); ++qi) {
    const Term current = nodes[qi].term;
    if (!is_defined(current).defined) {
      Verdict v = Verdict::make_refuted(current, path_to(nodes, static_cast<int>(qi)), explored);
      return v;
    }
    for (const auto& [rule, pos] : enumerate_redexes(current, RuleSet::all())) {
      if (fuel == 0) return Verdict::make_unknown(explored);
      --fuel;
      ++explored;
      Term child = apply_step(current, rule, pos);
      std::string key = alpha_key(child);
      if (visited.count(key)) continue;
      visited.emplace(std::move(key), static_cast<int>(nodes.size()));
      nodes.push_back({std::move(child), static_cast<int>(qi), rule, pos});
    }
  }
  // Alpha-closure of reducts exhausted with every member defined.
  Verdict v = Verdict::make_proved(explored);
  v.witness = t;
  return v;
}

Term canonical_failure(const Signature& sig) {
  return case_of(CaseBinding{}, cons(sig.canonical_failure_head()));
}

CaseBinding complete_binding(const Signature& sig, const CaseBinding& b) {
  for (const auto& [ctor, body] : b.branches())
    if (!sig.contains(ctor)) throw SignatureError("constructor not declared: " + ctor);
  std::vector<std::pair<Name, Term>> branches;
  branches.reserve(sig.size());
  for (const Name& c : sig.constructors()) {
    if (auto body = b.lookup(c))
      branches.emplace_back(c, complete(sig, *body));
    else
      branches.emplace_back(c, canonical_failure(sig));
  }
  return CaseBinding(std::move(branches));
}

Term complete(const Signature& sig, const Term& t) {
  if (as_var(t)) return t;
  if (const auto* k = as_cons(t)) {
    if (!sig.contains(k->name)) throw SignatureError("constructor not declared: " + k->name);
    return t;
  }
  if (const auto* a = as_app(t)) return app(complete(sig, a->fun), complete(sig, a->arg));
  if (const auto* l = as_lam(t)) return lam(l->binder, complete(sig, l->body));
  const auto* c = as_case(t);
  return case_of(complete_binding(sig, c->binding), complete(sig, c->scrutinee));
}

}  // namespace lcc
