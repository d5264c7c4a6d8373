#include "lcc/term.hpp"

#include <algorithm>
#include <cctype>

namespace lcc {

bool is_variable_name(const Name& n) {
  return !n.empty() && std::islower(static_cast<unsigned char>(n.front()));
}

bool is_constructor_name(const Name& n) {
  return !n.empty() && std::isupper(static_cast<unsigned char>(n.front()));
}

Signature::Signature(std::vector<Name> constructors) : ctors_(std::move(constructors)) {
  if (ctors_.empty()) throw SignatureError("signature must declare at least one constructor");
  for (std::size_t i = 0; i < ctors_.size(); ++i) {
    if (!is_constructor_name(ctors_[i]))
      throw SignatureError("not a constructor name: " + ctors_[i]);
    for (std::size_t j = i + 1; j < ctors_.size(); ++j)
      if (ctors_[i] == ctors_[j])
        throw SignatureError("duplicate constructor in signature: " + ctors_[i]);
  }
}

bool Signature::contains(const Name& c) const {
  return std::find(ctors_.begin(), ctors_.end(), c) != ctors_.end();
}

std::size_t Signature::index_of(const Name& c) const {
  for (std::size_t i = 0; i < ctors_.size(); ++i)
    if (ctors_[i] == c) return i + 1;
  throw SignatureError("constructor not declared: " + c);
}

CaseBinding::CaseBinding(std::vector<std::pair<Name, Term>> branches)
    : branches_(std::move(branches)) {
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    if (!is_constructor_name(branches_[i].first))
      throw SignatureError("not a constructor name: " + branches_[i].first);
    for (std::size_t j = i + 1; j < branches_.size(); ++j)
      if (branches_[i].first == branches_[j].first)
        throw SignatureError("duplicate branch constructor: " + branches_[i].first);
  }
}

std::optional<Term> CaseBinding::lookup(const Name& c) const {
  for (const auto& [ctor, body] : branches_)
    if (ctor == c) return body;
  return std::nullopt;
}

bool CaseBinding::binds(const Name& c) const { return lookup(c).has_value(); }

Term var(Name name) {
  if (!is_variable_name(name)) throw PreconditionError("not a variable name: " + name);
  return std::make_shared<TermNode>(TermNode{VarNode{std::move(name)}});
}

Term cons(Name name) {
  if (!is_constructor_name(name)) throw PreconditionError("not a constructor name: " + name);
  return std::make_shared<TermNode>(TermNode{ConsNode{std::move(name)}});
}

Term app(Term fun, Term arg) {
  return std::make_shared<TermNode>(TermNode{AppNode{std::move(fun), std::move(arg)}});
}

Term app(Term fun, const std::vector<Term>& args) {
  Term t = std::move(fun);
  for (const Term& a : args) t = app(t, a);
  return t;
}

Term lam(Name binder, Term body) {
  if (!is_variable_name(binder)) throw PreconditionError("not a variable name: " + binder);
  return std::make_shared<TermNode>(TermNode{LamNode{std::move(binder), std::move(body)}});
}

Term lam(const std::vector<Name>& binders, Term body) {
  Term t = std::move(body);
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) t = lam(*it, t);
  return t;
}

Term case_of(CaseBinding binding, Term scrutinee) {
  return std::make_shared<TermNode>(TermNode{CaseNode{std::move(binding), std::move(scrutinee)}});
}

namespace {

void free_vars_rec(const Term& t, std::vector<Name>& bound, NameSet& out) {
  if (const auto* v = as_var(t)) {
    if (std::find(bound.rbegin(), bound.rend(), v->name) == bound.rend()) out.insert(v->name);
  } else if (const auto* a = as_app(t)) {
    free_vars_rec(a->fun, bound, out);
    free_vars_rec(a->arg, bound, out);
  } else if (const auto* l = as_lam(t)) {
    bound.push_back(l->binder);
    free_vars_rec(l->body, bound, out);
    bound.pop_back();
  } else if (const auto* c = as_case(t)) {
    for (const auto& [ctor, body] : c->binding.branches()) free_vars_rec(body, bound, out);
    free_vars_rec(c->scrutinee, bound, out);
  }
}

void all_names_rec(const Term& t, NameSet& out) {
  if (const auto* v = as_var(t)) {
    out.insert(v->name);
  } else if (const auto* a = as_app(t)) {
    all_names_rec(a->fun, out);
    all_names_rec(a->arg, out);
  } else if (const auto* l = as_lam(t)) {
    out.insert(l->binder);
    all_names_rec(l->body, out);
  } else if (const auto* c = as_case(t)) {
    for (const auto& [ctor, body] : c->binding.branches()) all_names_rec(body, out);
    all_names_rec(c->scrutinee, out);
  }
}

bool occurs_free_rec(const Term& t, const Name& x) {
  if (const auto* v = as_var(t)) return v->name == x;
  if (const auto* a = as_app(t)) return occurs_free_rec(a->fun, x) || occurs_free_rec(a->arg, x);
  if (const auto* l = as_lam(t)) return l->binder != x && occurs_free_rec(l->body, x);
  if (const auto* c = as_case(t)) {
    for (const auto& [ctor, body] : c->binding.branches())
      if (occurs_free_rec(body, x)) return true;
    return occurs_free_rec(c->scrutinee, x);
  }
  return false;
}

// Parallel traversal; a binder pair is pushed per lambda. Two variables agree
// when they point at the same pair, or are the same free name.
bool alpha_eq_rec(const Term& a, const Term& b, std::vector<std::pair<Name, Name>>& binders) {
  if (const auto* va = as_var(a)) {
    const auto* vb = as_var(b);
    if (!vb) return false;
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      const bool hit_a = it->first == va->name;
      const bool hit_b = it->second == vb->name;
      if (hit_a || hit_b) return hit_a && hit_b;
    }
    return va->name == vb->name;
  }
  if (const auto* ca = as_cons(a)) {
    const auto* cb = as_cons(b);
    return cb && ca->name == cb->name;
  }
  if (const auto* aa = as_app(a)) {
    const auto* ab = as_app(b);
    return ab && alpha_eq_rec(aa->fun, ab->fun, binders) && alpha_eq_rec(aa->arg, ab->arg, binders);
  }
  if (const auto* la = as_lam(a)) {
    const auto* lb = as_lam(b);
    if (!lb) return false;
    binders.emplace_back(la->binder, lb->binder);
    const bool ok = alpha_eq_rec(la->body, lb->body, binders);
    binders.pop_back();
    return ok;
  }
  const auto* ka = as_case(a);
  const auto* kb = as_case(b);
  if (!ka || !kb) return false;
  if (ka->binding.size() != kb->binding.size()) return false;
  for (const auto& [ctor, body_a] : ka->binding.branches()) {
    auto body_b = kb->binding.lookup(ctor);
    if (!body_b || !alpha_eq_rec(body_a, *body_b, binders)) return false;
  }
  return alpha_eq_rec(ka->scrutinee, kb->scrutinee, binders);
}

void alpha_key_rec(const Term& t, std::vector<Name>& binders, std::string& out) {
  if (const auto* v = as_var(t)) {
    for (std::size_t i = binders.size(); i-- > 0;) {
      if (binders[i] == v->name) {
        out += 'b';
        out += std::to_string(binders.size() - 1 - i);
        return;
      }
    }
    out += 'f';
    out += v->name;
    out += ';';
  } else if (const auto* c = as_cons(t)) {
    out += 'k';
    out += c->name;
    out += ';';
  } else if (const auto* a = as_app(t)) {
    out += '(';
    alpha_key_rec(a->fun, binders, out);
    out += ' ';
    alpha_key_rec(a->arg, binders, out);
    out += ')';
  } else if (const auto* l = as_lam(t)) {
    out += 'L';
    binders.push_back(l->binder);
    alpha_key_rec(l->body, binders, out);
    binders.pop_back();
  } else if (const auto* k = as_case(t)) {
    out += '{';
    std::vector<const std::pair<Name, Term>*> sorted;
    sorted.reserve(k->binding.size());
    for (const auto& br : k->binding.branches()) sorted.push_back(&br);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* x, const auto* y) { return x->first < y->first; });
    for (const auto* br : sorted) {
      out += br->first;
      out += '=';
      alpha_key_rec(br->second, binders, out);
      out += ';';
    }
    out += '}';
    alpha_key_rec(k->scrutinee, binders, out);
  }
}

Term substitute_rec(const Term& t, const Name& x, const Term& u, const NameSet& fv_u) {
  if (const auto* v = as_var(t)) return v->name == x ? u : t;
  if (as_cons(t)) return t;
  if (const auto* a = as_app(t))
    return app(substitute_rec(a->fun, x, u, fv_u), substitute_rec(a->arg, x, u, fv_u));
  if (const auto* l = as_lam(t)) {
    if (l->binder == x) return t;
    if (!occurs_free_rec(l->body, x)) return t;
    if (fv_u.count(l->binder)) {
      // The binder would capture a free variable of u; rename it away from
      // every name in sight first.
      NameSet avoid = all_names(l->body);
      avoid.insert(fv_u.begin(), fv_u.end());
      avoid.insert(x);
      const Name renamed = fresh_name(l->binder, avoid);
      const Term body = substitute_rec(l->body, l->binder, var(renamed), NameSet{renamed});
      return lam(renamed, substitute_rec(body, x, u, fv_u));
    }
    return lam(l->binder, substitute_rec(l->body, x, u, fv_u));
  }
  const auto* c = as_case(t);
  std::vector<std::pair<Name, Term>> branches;
  branches.reserve(c->binding.size());
  for (const auto& [ctor, body] : c->binding.branches())
    branches.emplace_back(ctor, substitute_rec(body, x, u, fv_u));
  return case_of(CaseBinding(std::move(branches)), substitute_rec(c->scrutinee, x, u, fv_u));
}

}  // namespace

NameSet free_vars(const Term& t) {
  NameSet out;
  std::vector<Name> bound;
  free_vars_rec(t, bound, out);
  return out;
}

NameSet free_vars(const CaseBinding& b) {
  NameSet out;
  std::vector<Name> bound;
  for (const auto& [ctor, body] : b.branches()) free_vars_rec(body, bound, out);
  return out;
}

NameSet all_names(const Term& t) {
  NameSet out;
  all_names_rec(t, out);
  return out;
}

bool occurs_free(const Term& t, const Name& x) { return occurs_free_rec(t, x); }

bool alpha_eq(const Term& a, const Term& b) {
  std::vector<std::pair<Name, Name>> binders;
  return alpha_eq_rec(a, b, binders);
}

std::string alpha_key(const Term& t) {
  std::string out;
  out.reserve(64);
  std::vector<Name> binders;
  alpha_key_rec(t, binders, out);
  return out;
}

Name fresh_name(const Name& base, const NameSet& avoid) {
  if (!avoid.count(base)) return base;
  std::size_t end = base.size();
  while (end > 1 && std::isdigit(static_cast<unsigned char>(base[end - 1]))) --end;
  Name stem = base.substr(0, end);
  if (stem.empty() || !is_variable_name(stem)) stem = "x";
  for (unsigned long k = 1;; ++k) {
    Name candidate = stem + std::to_string(k);
    if (!avoid.count(candidate)) return candidate;
  }
}

Term substitute(const Term& t, const Name& x, const Term& u) {
  return substitute_rec(t, x, u, free_vars(u));
}

std::optional<Term> binding_lookup(const Signature& sig, const CaseBinding& binding,
                                   const Name& c) {
  if (!sig.contains(c)) throw SignatureError("constructor not declared: " + c);
  return binding.lookup(c);
}

std::size_t term_size(const Term& t) {
  if (as_var(t) || as_cons(t)) return 1;
  if (const auto* a = as_app(t)) return 1 + term_size(a->fun) + term_size(a->arg);
  if (const auto* l = as_lam(t)) return 1 + term_size(l->body);
  const auto* c = as_case(t);
  std::size_t n = 1 + term_size(c->scrutinee);
  for (const auto& [ctor, body] : c->binding.branches()) n += term_size(body);
  return n;
}

void validate_over(const Signature& sig, const Term& t) {
  if (const auto* c = as_cons(t)) {
    if (!sig.contains(c->name)) throw SignatureError("constructor not declared: " + c->name);
  } else if (const auto* a = as_app(t)) {
    validate_over(sig, a->fun);
    validate_over(sig, a->arg);
  } else if (const auto* l = as_lam(t)) {
    validate_over(sig, l->body);
  } else if (const auto* k = as_case(t)) {
    for (const auto& [ctor, body] : k->binding.branches()) {
      if (!sig.contains(ctor)) throw SignatureError("constructor not declared: " + ctor);
      validate_over(sig, body);
    }
    validate_over(sig, k->scrutinee);
  }
}

Context::Context(std::vector<Name> vars) : vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (!is_variable_name(vars_[i])) throw PreconditionError("not a variable name: " + vars_[i]);
    for (std::size_t j = i + 1; j < vars_.size(); ++j)
      if (vars_[i] == vars_[j]) throw PreconditionError("duplicate context variable: " + vars_[i]);
  }
}

bool Context::contains(const Name& x) const {
  return std::find(vars_.begin(), vars_.end(), x) != vars_.end();
}

}  // namespace lcc
