#include "lcc/rewrite.hpp"

#include <algorithm>

namespace lcc {

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::app_lam: return "AppLam";
    case Rule::lam_app: return "LamApp";
    case Rule::case_cons: return "CaseCons";
    case Rule::case_app: return "CaseApp";
    case Rule::case_lam: return "CaseLam";
    case Rule::case_case: return "CaseCase";
  }
  return "?";
}

std::string_view rule_short_name(Rule r) {
  switch (r) {
    case Rule::app_lam: return "AL";
    case Rule::lam_app: return "LA";
    case Rule::case_cons: return "CO";
    case Rule::case_app: return "CA";
    case Rule::case_lam: return "CL";
    case Rule::case_case: return "CC";
  }
  return "?";
}

std::optional<Rule> rule_from_short_name(std::string_view s) {
  for (Rule r : kAllRules)
    if (rule_short_name(r) == s) return r;
  return std::nullopt;
}

std::optional<RuleSet> RuleSet::from_name(std::string_view name) {
  if (name == "all") return all();
  if (name == "lcm") return lcm();
  if (name == "cc") return cc_only();
  return std::nullopt;
}

std::string PathStep::to_string() const {
  switch (kind) {
    case Kind::fun: return "function";
    case Kind::arg: return "argument";
    case Kind::body: return "body";
    case Kind::scrutinee: return "scrutinee";
    case Kind::branch: return "branch-" + branch_ctor;
  }
  return "?";
}

Position Position::child(PathStep step) const {
  Position p = *this;
  p.path.push_back(std::move(step));
  return p;
}

std::string Position::to_string() const {
  if (path.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '/';
    out += path[i].to_string();
  }
  return out;
}

CaseBinding compose_bindings(const CaseBinding& theta, const CaseBinding& phi) {
  std::vector<std::pair<Name, Term>> branches;
  branches.reserve(phi.size());
  for (const auto& [ctor, body] : phi.branches())
    branches.emplace_back(ctor, case_of(theta, body));
  return CaseBinding(std::move(branches));
}

std::optional<Rule> head_redex_rule(const Term& t) {
  if (const auto* a = as_app(t)) {
    if (as_lam(a->fun)) return Rule::app_lam;
    return std::nullopt;
  }
  if (const auto* l = as_lam(t)) {
    const auto* body = as_app(l->body);
    if (body) {
      const auto* v = as_var(body->arg);
      if (v && v->name == l->binder && !occurs_free(body->fun, l->binder)) return Rule::lam_app;
    }
    return std::nullopt;
  }
  if (const auto* c = as_case(t)) {
    if (const auto* k = as_cons(c->scrutinee))
      // A case of an out-of-domain constructor is a match failure: no rule.
      return c->binding.binds(k->name) ? std::optional<Rule>(Rule::case_cons) : std::nullopt;
    if (as_app(c->scrutinee)) return Rule::case_app;
    if (as_lam(c->scrutinee)) return Rule::case_lam;
    if (as_case(c->scrutinee)) return Rule::case_case;
  }
  return std::nullopt;
}

namespace {

void enumerate_rec(const Term& t, RuleSet rules, Position& pos,
                   std::vector<std::pair<Rule, Position>>& out) {
  if (auto r = head_redex_rule(t); r && rules.contains(*r)) out.emplace_back(*r, pos);
  if (const auto* a = as_app(t)) {
    pos.path.push_back({PathStep::Kind::fun});
    enumerate_rec(a->fun, rules, pos, out);
    pos.path.back() = {PathStep::Kind::arg};
    enumerate_rec(a->arg, rules, pos, out);
    pos.path.pop_back();
  } else if (const auto* l = as_lam(t)) {
    pos.path.push_back({PathStep::Kind::body});
    enumerate_rec(l->body, rules, pos, out);
    pos.path.pop_back();
  } else if (const auto* c = as_case(t)) {
    for (const auto& [ctor, body] : c->binding.branches()) {
      pos.path.push_back({PathStep::Kind::branch, ctor});
      enumerate_rec(body, rules, pos, out);
      pos.path.pop_back();
    }
    pos.path.push_back({PathStep::Kind::scrutinee});
    enumerate_rec(c->scrutinee, rules, pos, out);
    pos.path.pop_back();
  }
}

Term contract_head(const Term& t, Rule rule) {
  if (head_redex_rule(t) != rule)
    throw PreconditionError(std::string("rule ") + std::string(rule_name(rule)) +
                            " does not match at the requested position");
  switch (rule) {
    case Rule::app_lam: {
      const auto* a = as_app(t);
      const auto* l = as_lam(a->fun);
      return substitute(l->body, l->binder, a->arg);
    }
    case Rule::lam_app: {
      const auto* l = as_lam(t);
      return as_app(l->body)->fun;
    }
    case Rule::case_cons: {
      const auto* c = as_case(t);
      return *c->binding.lookup(as_cons(c->scrutinee)->name);
    }
    case Rule::case_app: {
      const auto* c = as_case(t);
      const auto* a = as_app(c->scrutinee);
      return app(case_of(c->binding, a->fun), a->arg);
    }
    case Rule::case_lam: {
      const auto* c = as_case(t);
      const auto* l = as_lam(c->scrutinee);
      Name binder = l->binder;
      Term body = l->body;
      const NameSet fv_binding = free_vars(c->binding);
      if (fv_binding.count(binder)) {
        // Side condition x not free in th, established by renaming.
        NameSet avoid = all_names(body);
        avoid.insert(fv_binding.begin(), fv_binding.end());
        const Name renamed = fresh_name(binder, avoid);
        body = substitute(body, binder, var(renamed));
        binder = renamed;
      }
      return lam(binder, case_of(c->binding, body));
    }
    case Rule::case_case: {
      const auto* c = as_case(t);
      const auto* inner = as_case(c->scrutinee);
      return case_of(compose_bindings(c->binding, inner->binding), inner->scrutinee);
    }
  }
  throw PreconditionError("unknown rule");
}

Term rewrite_at(const Term& t, Rule rule, const Position& pos, std::size_t depth) {
  if (depth == pos.path.size()) return contract_head(t, rule);
  const PathStep& step = pos.path[depth];
  switch (step.kind) {
    case PathStep::Kind::fun:
      if (const auto* a = as_app(t))
        return app(rewrite_at(a->fun, rule, pos, depth + 1), a->arg);
      break;
    case PathStep::Kind::arg:
      if (const auto* a = as_app(t))
        return app(a->fun, rewrite_at(a->arg, rule, pos, depth + 1));
      break;
    case PathStep::Kind::body:
      if (const auto* l = as_lam(t))
        return lam(l->binder, rewrite_at(l->body, rule, pos, depth + 1));
      break;
    case PathStep::Kind::scrutinee:
      if (const auto* c = as_case(t))
        return case_of(c->binding, rewrite_at(c->scrutinee, rule, pos, depth + 1));
      break;
    case PathStep::Kind::branch:
      if (const auto* c = as_case(t)) {
        std::vector<std::pair<Name, Term>> branches = c->binding.branches();
        for (auto& [ctor, body] : branches) {
          if (ctor == step.branch_ctor) {
            body = rewrite_at(body, rule, pos, depth + 1);
            return case_of(CaseBinding(std::move(branches)), c->scrutinee);
          }
        }
      }
      break;
  }
  throw PreconditionError("position does not address a subterm: " + pos.to_string());
}

}  // namespace

std::vector<std::pair<Rule, Position>> enumerate_redexes(const Term& t, RuleSet rules) {
  std::vector<std::pair<Rule, Position>> out;
  Position pos;
  enumerate_rec(t, rules, pos, out);
  return out;
}

Term subterm_at(const Term& t, const Position& pos) {
  Term cur = t;
  for (const PathStep& step : pos.path) {
    switch (step.kind) {
      case PathStep::Kind::fun:
        if (const auto* a = as_app(cur)) { cur = a->fun; continue; }
        break;
      case PathStep::Kind::arg:
        if (const auto* a = as_app(cur)) { cur = a->arg; continue; }
        break;
      case PathStep::Kind::body:
        if (const auto* l = as_lam(cur)) { cur = l->body; continue; }
        break;
      case PathStep::Kind::scrutinee:
        if (const auto* c = as_case(cur)) { cur = c->scrutinee; continue; }
        break;
      case PathStep::Kind::branch:
        if (const auto* c = as_case(cur)) {
          if (auto body = c->binding.lookup(step.branch_ctor)) { cur = *body; continue; }
        }
        break;
    }
    throw PreconditionError("position does not address a subterm: " + pos.to_string());
  }
  return cur;
}

Term apply_step(const Term& t, Rule rule, const Position& pos) {
  return rewrite_at(t, rule, pos, 0);
}

ReduceResult reduce(const Term& t, RuleSet rules, std::size_t fuel) {
  ReduceResult result{t, {}, false};
  for (;;) {
    auto redexes = enumerate_redexes(result.term, rules);
    if (redexes.empty()) return result;
    if (fuel == 0) {
      result.exhausted = true;
      return result;
    }
    --fuel;
    const auto& [rule, pos] = redexes.front();
    Term next = apply_step(result.term, rule, pos);
    result.trace.push_back(Step{rule, pos, result.term, next});
    result.term = std::move(next);
  }
}

Term normalize_cc(const Term& t) {
  if (as_var(t) || as_cons(t)) return t;
  if (const auto* a = as_app(t)) return app(normalize_cc(a->fun), normalize_cc(a->arg));
  if (const auto* l = as_lam(t)) return lam(l->binder, normalize_cc(l->body));
  const auto* c = as_case(t);
  if (const auto* inner = as_case(c->scrutinee))
    return normalize_cc(case_of(compose_bindings(c->binding, inner->binding), inner->scrutinee));
  return case_of(normalize_cc(c->binding), normalize_cc(c->scrutinee));
}

CaseBinding normalize_cc(const CaseBinding& b) {
  std::vector<std::pair<Name, Term>> branches;
  branches.reserve(b.size());
  for (const auto& [ctor, body] : b.branches()) branches.emplace_back(ctor, normalize_cc(body));
  return CaseBinding(std::move(branches));
}

Measure measure(const Term& t) {
  if (as_var(t) || as_cons(t)) return 1;
  if (const auto* a = as_app(t)) return measure(a->fun) + measure(a->arg);
  if (const auto* l = as_lam(t)) return measure(l->body) + 1;
  const auto* c = as_case(t);
  return measure(c->scrutinee) * (measure(c->binding) + 2);
}

Measure measure(const CaseBinding& b) {
  Measure sum = 0;
  for (const auto& [ctor, body] : b.branches()) sum += measure(body);
  return sum;
}

std::string measure_to_string(Measure m) {
  if (m == 0) return "0";
  std::string out;
  while (m > 0) {
    out += static_cast<char>('0' + static_cast<unsigned>(m % 10));
    m /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace lcc
