#include "lcc/per_model.hpp"

#include <algorithm>

#include "lcc/equivalence.hpp"

namespace lcc {

Obj Obj::pow(std::size_t k) {
  std::vector<Obj> parts(k, Obj::d());
  return Obj(Kind::prod, std::move(parts));
}

bool Obj::operator==(const Obj& o) const {
  if (kind_ != o.kind_ || parts_.size() != o.parts_.size()) return false;
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (!(parts_[i] == o.parts_[i])) return false;
  return true;
}

std::string Obj::to_string() const {
  switch (kind_) {
    case Kind::d:
      return "D";
    case Kind::prod: {
      if (parts_.empty()) return "1";
      const bool all_d = std::all_of(parts_.begin(), parts_.end(),
                                     [](const Obj& o) { return o.kind() == Kind::d; });
      if (all_d && parts_.size() > 1) return "D^" + std::to_string(parts_.size());
      std::string out = "(";
      for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += "*";
        out += parts_[i].to_string();
      }
      return out + ")";
    }
    case Kind::exp:
      return "(" + parts_[1].to_string() + "^" + parts_[0].to_string() + ")";
  }
  return "?";
}

Term church_tuple(const std::vector<Term>& components) {
  if (components.empty()) throw PreconditionError("church_tuple needs at least one component");
  NameSet avoid;
  for (const Term& t : components) {
    NameSet fv = free_vars(t);
    avoid.insert(fv.begin(), fv.end());
  }
  const Name f = fresh_name("f", avoid);
  return lam(f, app(var(f), components));
}

Term church_proj(std::size_t k, std::size_t i) {
  if (k < 1 || i < 1 || i > k) throw PreconditionError("projection index out of range");
  std::vector<Name> binders;
  binders.reserve(k);
  for (std::size_t j = 1; j <= k; ++j) binders.push_back("x" + std::to_string(j));
  return lam("p", app(var("p"), lam(binders, var(binders[i - 1]))));
}

namespace {

Name fresh_for(const char* base, const std::vector<Term>& terms) {
  NameSet avoid;
  for (const Term& t : terms) {
    NameSet names = all_names(t);
    avoid.insert(names.begin(), names.end());
  }
  return fresh_name(base, avoid);
}

void require_tags(bool ok, const std::string& what) {
  if (!ok) throw TagMismatchError("object tags do not match: " + what);
}

}  // namespace

MorphismRep morphism_id(Obj a) {
  return {lam("x", var("x")), a, std::move(a)};
}

MorphismRep morphism_compose(const MorphismRep& f, const MorphismRep& g) {
  require_tags(f.target == g.source,
               "compose " + f.target.to_string() + " vs " + g.source.to_string());
  const Name z = fresh_for("z", {f.rep, g.rep});
  return {lam(z, app(g.rep, app(f.rep, var(z)))), f.source, g.target};
}

MorphismRep morphism_pair(const std::vector<MorphismRep>& fs) {
  if (fs.empty()) throw PreconditionError("pairing needs at least one morphism");
  std::vector<Obj> targets;
  std::vector<Term> reps;
  for (const MorphismRep& f : fs) {
    require_tags(f.source == fs.front().source, "pairing sources");
    targets.push_back(f.target);
    reps.push_back(f.rep);
  }
  const Name x = fresh_for("x", reps);
  std::vector<Term> applied;
  applied.reserve(reps.size());
  for (const Term& rep : reps) applied.push_back(app(rep, var(x)));
  return {lam(x, church_tuple(applied)), fs.front().source, Obj::prod(std::move(targets))};
}

MorphismRep morphism_pair(const MorphismRep& f, const MorphismRep& g) {
  return morphism_pair(std::vector<MorphismRep>{f, g});
}

MorphismRep morphism_proj(const Obj& product, std::size_t i) {
  if (!product.is_prod() || product.components().empty())
    throw TagMismatchError("projection out of a non-product: " + product.to_string());
  const std::size_t k = product.components().size();
  if (i < 1 || i > k) throw PreconditionError("projection index out of range");
  return {church_proj(k, i), product, product.components()[i - 1]};
}

MorphismRep morphism_product(const MorphismRep& f, const MorphismRep& g) {
  const Name x = fresh_for("x", {f.rep, g.rep});
  Term body = church_tuple({app(f.rep, app(church_proj(2, 1), var(x))),
                            app(g.rep, app(church_proj(2, 2), var(x)))});
  return {lam(x, body), Obj::prod({f.source, g.source}), Obj::prod({f.target, g.target})};
}

MorphismRep morphism_curry(const MorphismRep& f) {
  require_tags(f.source.is_prod() && f.source.components().size() == 2,
               "curry of a non-pair source " + f.source.to_string());
  NameSet avoid = all_names(f.rep);
  const Name x = fresh_name("x", avoid);
  avoid.insert(x);
  const Name y = fresh_name("y", avoid);
  Term body = app(f.rep, church_tuple({var(x), var(y)}));
  return {lam(x, lam(y, body)), f.source.components()[0],
          Obj::exp(f.source.components()[1], f.target)};
}

MorphismRep morphism_ev(Obj a, Obj b) {
  Term rep = lam("x", app(app(church_proj(2, 1), var("x")), app(church_proj(2, 2), var("x"))));
  Obj source = Obj::prod({Obj::exp(a, b), std::move(a)});
  return {std::move(rep), std::move(source), std::move(b)};
}

MorphismRep morphism_terminal(Obj a) {
  return {lam("x", var("x")), std::move(a), Obj::unit()};
}

MorphismRep ModelConstants::fc(const Name& constructor) const {
  if (!sig_.contains(constructor))
    throw SignatureError("constructor not declared: " + constructor);
  return {lam("x", cons(constructor)), Obj::unit(), Obj::d()};
}

MorphismRep ModelConstants::case_morphism() const {
  const std::size_t n = sig_.size();
  std::vector<std::pair<Name, Term>> branches;
  branches.reserve(n);
  for (std::size_t i = 1; i <= n; ++i)
    branches.emplace_back(sig_.constructors()[i - 1],
                          app(church_proj(n, i), app(church_proj(2, 1), var("x"))));
  Term body = case_of(CaseBinding(std::move(branches)), app(church_proj(2, 2), var("x")));
  return {lam("x", body), Obj::prod({binding_object(), Obj::d()}), Obj::d()};
}

MorphismRep ModelConstants::fail() const {
  return {lam("x", canonical_failure(sig_)), Obj::unit(), Obj::d()};
}

MorphismRep ModelConstants::lam_morphism() const {
  return {lam("x", var("x")), Obj::exp(Obj::d(), Obj::d()), Obj::d()};
}

MorphismRep ModelConstants::app_morphism() const {
  return {lam("x", var("x")), Obj::d(), Obj::exp(Obj::d(), Obj::d())};
}

MorphismRep interpret(const Signature& sig, const Context& ctx, const Term& t) {
  validate_over(sig, t);
  for (const Name& x : free_vars(t))
    if (!ctx.contains(x)) throw PreconditionError("free variable outside the context: " + x);

  const std::size_t k = ctx.size();
  Term body = complete(sig, t);
  NameSet avoid = all_names(body);
  avoid.insert(ctx.vars().begin(), ctx.vars().end());
  const Name x = fresh_name("x", avoid);
  for (std::size_t i = 1; i <= k; ++i)
    body = substitute(body, ctx.vars()[i - 1], app(church_proj(k, i), var(x)));
  return {lam(x, body), Obj::pow(k), Obj::d()};
}

namespace {

// Canonical iso D^k x D -> D^(k+1) as a Church-tuple repacking term.
MorphismRep repack_iso(std::size_t k) {
  std::vector<Term> parts;
  parts.reserve(k + 1);
  for (std::size_t i = 1; i <= k; ++i)
    parts.push_back(app(church_proj(k, i), app(church_proj(2, 1), var("p"))));
  parts.push_back(app(church_proj(2, 2), var("p")));
  return {lam("p", church_tuple(parts)), Obj::prod({Obj::pow(k), Obj::d()}), Obj::pow(k + 1)};
}

MorphismRep figure3_rec(const ModelConstants& model, const Context& ctx, const Term& t);

MorphismRep figure3_binding(const ModelConstants& model, const Context& ctx,
                            const CaseBinding& binding) {
  const Signature& sig = model.signature();
  std::vector<MorphismRep> components;
  components.reserve(sig.size());
  for (const Name& c : sig.constructors()) {
    if (auto body = binding.lookup(c))
      components.push_back(figure3_rec(model, ctx, *body));
    else
      components.push_back(
          morphism_compose(morphism_terminal(Obj::pow(ctx.size())), model.fail()));
  }
  return morphism_pair(components);
}

MorphismRep figure3_rec(const ModelConstants& model, const Context& ctx, const Term& t) {
  const Obj source = Obj::pow(ctx.size());
  if (const auto* v = as_var(t)) {
    for (std::size_t i = 0; i < ctx.size(); ++i)
      if (ctx.vars()[i] == v->name) return morphism_proj(source, i + 1);
    throw PreconditionError("free variable outside the context: " + v->name);
  }
  if (const auto* c = as_cons(t))
    return morphism_compose(morphism_terminal(source), model.fc(c->name));
  if (const auto* a = as_app(t)) {
    MorphismRep fun = figure3_rec(model, ctx, a->fun);
    MorphismRep arg = figure3_rec(model, ctx, a->arg);
    MorphismRep chain = morphism_compose(
        morphism_pair(fun, arg), morphism_product(model.app_morphism(), morphism_id(Obj::d())));
    return morphism_compose(chain, morphism_ev(Obj::d(), Obj::d()));
  }
  if (const auto* l = as_lam(t)) {
    Name binder = l->binder;
    Term body = l->body;
    if (ctx.contains(binder)) {
      NameSet avoid = all_names(body);
      avoid.insert(ctx.vars().begin(), ctx.vars().end());
      const Name renamed = fresh_name(binder, avoid);
      body = substitute(body, binder, var(renamed));
      binder = renamed;
    }
    std::vector<Name> extended = ctx.vars();
    extended.push_back(binder);
    MorphismRep inner = figure3_rec(model, Context(std::move(extended)), body);
    MorphismRep f_t = morphism_compose(repack_iso(ctx.size()), inner);
    return morphism_compose(morphism_curry(f_t), model.lam_morphism());
  }
  const auto* c = as_case(t);
  MorphismRep binding = figure3_binding(model, ctx, c->binding);
  MorphismRep scrutinee = figure3_rec(model, ctx, c->scrutinee);
  return morphism_compose(morphism_pair(binding, scrutinee), model.case_morphism());
}

}  // namespace

MorphismRep interpret_figure3(const Signature& sig, const Context& ctx, const Term& t) {
  validate_over(sig, t);
  for (const Name& x : free_vars(t))
    if (!ctx.contains(x)) throw PreconditionError("free variable outside the context: " + x);
  return figure3_rec(ModelConstants(sig), ctx, t);
}

const char* diagram_name(Diagram d) {
  switch (d) {
    case Diagram::d1: return "D1";
    case Diagram::d2: return "D2";
    case Diagram::d3: return "D3";
    case Diagram::d4: return "D4";
    case Diagram::d5: return "D5";
    case Diagram::d6: return "D6";
  }
  return "?";
}

namespace {

// h_iso of the appendix derivations: P -> P x 1 by duplication.
MorphismRep dup_with_unit(const Obj& p) {
  return {lam("x", church_tuple({var("x"), var("x")})), p, Obj::prod({p, Obj::unit()})};
}

// h_iso reassociator (A x B) x C -> A x (B x C).
MorphismRep reassoc(const Obj& a, const Obj& b, const Obj& c) {
  Term first = app(church_proj(2, 1), app(church_proj(2, 1), var("x")));
  Term second = app(church_proj(2, 2), app(church_proj(2, 1), var("x")));
  Term third = app(church_proj(2, 2), var("x"));
  Term rep = lam("x", church_tuple({first, church_tuple({second, third})}));
  return {std::move(rep), Obj::prod({Obj::prod({a, b}), c}), Obj::prod({a, Obj::prod({b, c})})};
}

// Case-binding composition morphism: the pairing of (id x proj[n]i); case.
MorphismRep comp_morphism(const ModelConstants& model) {
  const Obj p = model.binding_object();
  const std::size_t n = model.signature().size();
  std::vector<MorphismRep> components;
  components.reserve(n);
  for (std::size_t i = 1; i <= n; ++i)
    components.push_back(morphism_compose(
        morphism_product(morphism_id(p), morphism_proj(p, i)), model.case_morphism()));
  return morphism_pair(components);
}

Verdict join_sides(const MorphismRep& lhs, const MorphismRep& rhs, std::size_t fuel) {
  require_tags(lhs.source == rhs.source && lhs.target == rhs.target, "diagram sides");
  return convertible(lhs.rep, rhs.rep, fuel);
}

Verdict combine(Verdict acc, Verdict next) {
  if (acc.refuted()) return acc;
  next.explored += acc.explored;
  if (next.refuted()) return next;
  if (acc.unknown() || next.unknown()) {
    Verdict v = Verdict::make_unknown(next.explored);
    return v;
  }
  return next;
}

}  // namespace

Verdict check_diagram(const Signature& sig, Diagram d, std::size_t fuel) {
  const ModelConstants model(sig);
  const Obj p = model.binding_object();
  const Obj dd = Obj::exp(Obj::d(), Obj::d());

  switch (d) {
    case Diagram::d1: {
      Verdict first = join_sides(morphism_compose(model.lam_morphism(), model.app_morphism()),
                                 morphism_id(dd), fuel);
      return combine(first,
                     join_sides(morphism_compose(model.app_morphism(), model.lam_morphism()),
                                morphism_id(Obj::d()), fuel));
    }
    case Diagram::d2: {
      Verdict acc = Verdict::make_proved(0);
      for (std::size_t i = 1; i <= sig.size(); ++i) {
        MorphismRep lhs = morphism_compose(
            morphism_compose(dup_with_unit(p),
                             morphism_product(morphism_id(p), model.fc(sig.constructors()[i - 1]))),
            model.case_morphism());
        acc = combine(acc, join_sides(lhs, morphism_proj(p, i), fuel));
        if (acc.refuted()) return acc;
      }
      return acc;
    }
    case Diagram::d3: {
      MorphismRep lhs = morphism_compose(
          morphism_compose(morphism_product(model.case_morphism(), morphism_id(Obj::d())),
                           morphism_product(model.app_morphism(), morphism_id(Obj::d()))),
          morphism_ev(Obj::d(), Obj::d()));
      MorphismRep rhs = morphism_compose(
          morphism_compose(
              morphism_compose(reassoc(p, Obj::d(), Obj::d()),
                               morphism_product(morphism_id(p),
                                                morphism_product(model.app_morphism(),
                                                                 morphism_id(Obj::d())))),
              morphism_product(morphism_id(p), morphism_ev(Obj::d(), Obj::d()))),
          model.case_morphism());
      return join_sides(lhs, rhs, fuel);
    }
    case Diagram::d4: {
      MorphismRep f_case = morphism_compose(
          morphism_compose(reassoc(p, dd, Obj::d()),
                           morphism_product(morphism_id(p), morphism_ev(Obj::d(), Obj::d()))),
          model.case_morphism());
      MorphismRep abstr_case = morphism_curry(f_case);
      MorphismRep lhs = morphism_compose(abstr_case, model.lam_morphism());
      MorphismRep rhs = morphism_compose(
          morphism_product(morphism_id(p), model.lam_morphism()), model.case_morphism());
      return join_sides(lhs, rhs, fuel);
    }
    case Diagram::d5: {
      MorphismRep lhs = morphism_compose(
          morphism_product(comp_morphism(model), morphism_id(Obj::d())), model.case_morphism());
      MorphismRep rhs = morphism_compose(
          morphism_compose(reassoc(p, p, Obj::d()),
                           morphism_product(morphism_id(p), model.case_morphism())),
          model.case_morphism());
      return join_sides(lhs, rhs, fuel);
    }
    case Diagram::d6: {
      MorphismRep lhs =
          morphism_compose(morphism_proj(Obj::prod({p, Obj::unit()}), 2), model.fail());
      MorphismRep rhs = morphism_compose(morphism_product(morphism_id(p), model.fail()),
                                         model.case_morphism());
      return join_sides(lhs, rhs, fuel);
    }
  }
  throw PreconditionError("unknown diagram");
}

}  // namespace lcc
