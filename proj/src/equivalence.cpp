#include "lcc/equivalence.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lcc/per_model.hpp"

namespace lcc {

namespace {

constexpr std::size_t kCcNormalizeFuel = 1u << 22;

// One side of the bidirectional search. Nodes hold cc-compressed reducts
// (when CaseCase is enabled); the edge from the parent is the recorded rule
// application, the implicit cc-tail down to the stored term is reconstructed
// on demand.
struct SearchNode {
  Term term;
  int parent = -1;
  Rule rule{};
  Position pos;
  bool first_redex_done = false;  // set on nodes expanded by the leftmost race
};

struct Side {
  std::vector<SearchNode> nodes;
  std::unordered_map<std::string, int> visited;
  std::size_t next_unexpanded = 0;
  std::optional<int> normal_form;
  bool exhausted = false;
  // leftmost-race state
  int tip = 0;
  bool race_done = false;
  std::size_t race_steps = 0;
};

struct JoinSearch {
  RuleSet rules = RuleSet::all();
  bool compress = false;
  std::size_t fuel = 0;
  std::size_t explored = 0;
  Term original[2];  // the query terms before cc-compression
  Side sides[2];

  Term canon(const Term& t) const { return compress ? normalize_cc(t) : t; }

  // Trace from the side's original term down to node `idx`; the initial and
  // per-edge cc-normalization tails are spelled out as explicit steps.
  Trace trace_to(int side, int idx) const {
    Trace trace;
    if (compress && !alpha_eq(original[side], sides[side].nodes[0].term)) {
      ReduceResult head = reduce(original[side], RuleSet::cc_only(), kCcNormalizeFuel);
      trace = std::move(head.trace);
    }
    std::vector<int> chain;
    for (int i = idx; i >= 0; i = sides[side].nodes[i].parent) chain.push_back(i);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const SearchNode& n = sides[side].nodes[*it];
      if (n.parent < 0) continue;
      const Term& before = sides[side].nodes[n.parent].term;
      Term raw = apply_step(before, n.rule, n.pos);
      trace.push_back(Step{n.rule, n.pos, before, raw});
      if (compress && !alpha_eq(raw, n.term)) {
        ReduceResult tail = reduce(raw, RuleSet::cc_only(), kCcNormalizeFuel);
        for (Step& s : tail.trace) trace.push_back(std::move(s));
      }
    }
    return trace;
  }

  Verdict proved_at(int side, int this_idx, int other_idx) const {
    Verdict v = Verdict::make_proved(explored);
    v.witness = sides[side].nodes[this_idx].term;
    Trace a = trace_to(side, this_idx);
    Trace b = trace_to(1 - side, other_idx);
    if (side == 0) {
      v.trace = std::move(a);
      v.right_trace = std::move(b);
    } else {
      v.trace = std::move(b);
      v.right_trace = std::move(a);
    }
    return v;
  }

  Verdict refuted_normal_forms() const {
    const int li = *sides[0].normal_form;
    const int ri = *sides[1].normal_form;
    Verdict v = Verdict::make_refuted(sides[0].nodes[li].term, trace_to(0, li), explored);
    v.witness_right = sides[1].nodes[ri].term;
    v.right_trace = trace_to(1, ri);
    return v;
  }

  // Registers a newly derived reduct. Returns the index of the node on the
  // *other* side it joins with, if any; -2 when the child was fresh, -3 when
  // it was already known on its own side.
  int record_child(int side, int parent, Rule rule, const Position& pos, const Term& raw) {
    Term child = canon(raw);
    std::string key = alpha_key(child);
    auto other_hit = sides[1 - side].visited.find(key);
    if (other_hit != sides[1 - side].visited.end()) {
      sides[side].nodes.push_back({std::move(child), parent, rule, pos});
      // not registered in visited: the verdict is decided at this point
      return other_hit->second;
    }
    if (sides[side].visited.count(key)) return -3;
    sides[side].visited.emplace(std::move(key), static_cast<int>(sides[side].nodes.size()));
    sides[side].nodes.push_back({std::move(child), parent, rule, pos});
    return -2;
  }
};

}  // namespace

Verdict convertible(const EquivQuery& q) {
  if (alpha_eq(q.left, q.right)) {
    Verdict v = Verdict::make_proved(0);
    v.witness = q.right;
    return v;
  }

  JoinSearch search;
  search.rules = q.rules;
  search.compress = q.rules.contains(Rule::case_case);
  search.fuel = q.fuel;
  search.original[0] = q.left;
  search.original[1] = q.right;

  const Term l = search.canon(q.left);
  const Term r = search.canon(q.right);
  search.sides[0].nodes.push_back({l, -1, Rule::app_lam, {}, false});
  search.sides[1].nodes.push_back({r, -1, Rule::app_lam, {}, false});
  std::string lk = alpha_key(l);
  std::string rk = alpha_key(r);
  if (lk == rk) {
    // The cc-normal forms already coincide; they are a common reduct.
    Verdict v = Verdict::make_proved(0);
    v.witness = l;
    v.trace = search.trace_to(0, 0);
    v.right_trace = search.trace_to(1, 0);
    return v;
  }
  search.sides[0].visited.emplace(std::move(lk), 0);
  search.sides[1].visited.emplace(std::move(rk), 0);

  // Normal-form detection is free; two distinct normal forms refute even
  // with an empty budget.
  for (int s = 0; s < 2; ++s)
    if (enumerate_redexes(search.sides[s].nodes[0].term, search.rules).empty()) {
      search.sides[s].normal_form = 0;
      search.sides[s].race_done = true;
    }
  if (search.sides[0].normal_form && search.sides[1].normal_form)
    return search.refuted_normal_forms();

  // Phase 1: leftmost-outermost normalization race. The leftmost path is part
  // of the reduct set, so anything decided here is ordinary joinability; two
  // distinct normal forms refute by confluence. While neither side has
  // finished, the race may take at most half the budget; once one side is
  // done the other races on with whatever fuel remains.
  const std::size_t race_budget = q.fuel;
  auto race_side_done = [&](int s) { return search.sides[s].race_done; };
  while (search.fuel > 0 && (!race_side_done(0) || !race_side_done(1))) {
    if (!race_side_done(0) && !race_side_done(1) &&
        (race_budget - search.fuel) >= std::max<std::size_t>(64, race_budget / 2))
      break;
    for (int s = 0; s < 2; ++s) {
      Side& side = search.sides[s];
      if (side.race_done) continue;
      SearchNode& tip = side.nodes[side.tip];
      auto redexes = enumerate_redexes(tip.term, search.rules);
      if (redexes.empty()) {
        side.normal_form = side.tip;
        side.race_done = true;
        continue;
      }
      if (search.fuel == 0) continue;
      --search.fuel;
      ++search.explored;
      ++side.race_steps;
      tip.first_redex_done = true;
      const auto& [rule, pos] = redexes.front();
      Term raw = apply_step(tip.term, rule, pos);
      int hit = search.record_child(s, side.tip, rule, pos, raw);
      if (hit >= 0)
        return search.proved_at(s, static_cast<int>(side.nodes.size()) - 1, hit);
      if (hit == -3) {
        side.race_done = true;  // leftmost path cycled
        continue;
      }
      side.tip = static_cast<int>(side.nodes.size()) - 1;
    }
    if (search.sides[0].normal_form && search.sides[1].normal_form)
      return search.refuted_normal_forms();
  }
  if (search.sides[0].normal_form && search.sides[1].normal_form)
    return search.refuted_normal_forms();

  // Phase 2: bidirectional breadth-first closure exploration, alternating one
  // generation per side; alpha-memoized, keys modulo cnf when CaseCase is on.
  while (search.fuel > 0 && (!search.sides[0].exhausted || !search.sides[1].exhausted)) {
    for (int s = 0; s < 2; ++s) {
      Side& side = search.sides[s];
      const std::size_t generation_end = side.nodes.size();
      if (side.next_unexpanded >= generation_end) {
        side.exhausted = true;
        continue;
      }
      while (side.next_unexpanded < generation_end) {
        const int idx = static_cast<int>(side.next_unexpanded++);
        const Term current = side.nodes[idx].term;
        auto redexes = enumerate_redexes(current, search.rules);
        if (redexes.empty()) {
          if (!side.normal_form) side.normal_form = idx;
          continue;
        }
        const std::size_t start = side.nodes[idx].first_redex_done ? 1 : 0;
        for (std::size_t i = start; i < redexes.size(); ++i) {
          if (search.fuel == 0) return Verdict::make_unknown(search.explored);
          --search.fuel;
          ++search.explored;
          Term raw = apply_step(current, redexes[i].first, redexes[i].second);
          int hit = search.record_child(s, idx, redexes[i].first, redexes[i].second, raw);
          if (hit >= 0)
            return search.proved_at(s, static_cast<int>(side.nodes.size()) - 1, hit);
        }
      }
      if (search.sides[0].normal_form && search.sides[1].normal_form)
        return search.refuted_normal_forms();
    }
    // Definite negatives rest on the distinct-normal-forms criterion alone;
    // two exhausted, disjoint closures without normal forms stay Unknown.
    if (search.sides[0].exhausted && search.sides[1].exhausted) break;
  }
  return Verdict::make_unknown(search.explored);
}

Verdict convertible(const Term& left, const Term& right, std::size_t fuel) {
  return convertible(EquivQuery{left, right, fuel, RuleSet::all()});
}

Verdict check_soundness(const Signature& sig, const Context& ctx, const Term& t,
                        std::size_t fuel) {
  for (const Name& x : free_vars(t))
    if (!ctx.contains(x)) throw PreconditionError("free variable outside the context: " + x);

  const MorphismRep base = interpret(sig, ctx, t);
  std::size_t explored = 0;
  bool any_unknown = false;
  for (const auto& [rule, pos] : enumerate_redexes(t, RuleSet::all())) {
    const Term reduct = apply_step(t, rule, pos);
    const MorphismRep after = interpret(sig, ctx, reduct);
    Verdict v = convertible(base.rep, after.rep, fuel);
    explored += v.explored;
    if (v.refuted()) {
      v.explored = explored;
      return v;
    }
    if (v.unknown()) any_unknown = true;
  }
  if (any_unknown) return Verdict::make_unknown(explored);
  Verdict v = Verdict::make_proved(explored);
  v.witness = base.rep;
  return v;
}

Verdict check_completeness_pair(const Signature& sig, const Term& t1, const Term& t2,
                                std::size_t fuel, std::size_t hdef_fuel) {
  if (!is_hereditarily_defined(t1, hdef_fuel).proved())
    throw PreconditionError("left term not known hereditarily defined within budget");
  if (!is_hereditarily_defined(t2, hdef_fuel).proved())
    throw PreconditionError("right term not known hereditarily defined within budget");

  Verdict completed = convertible(complete(sig, t1), complete(sig, t2), fuel);
  Verdict original = convertible(t1, t2, fuel);
  const std::size_t explored = completed.explored + original.explored;

  if (completed.unknown() || original.unknown()) return Verdict::make_unknown(explored);
  if (completed.kind == original.kind) {
    Verdict v = Verdict::make_proved(explored);
    v.witness = completed.witness;
    return v;
  }
  // Definite disagreement between the two routes would falsify completion
  // preserving conversion on hereditarily defined terms.
  Verdict v = Verdict::make_refuted(t1, {}, explored);
  v.witness_right = t2;
  return v;
}

}  // namespace lcc
