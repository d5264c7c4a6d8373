#pragma once

#include <string>
#include <vector>

#include "lcc/completion.hpp"
#include "lcc/term.hpp"
#include "lcc/verdict.hpp"

namespace lcc {

struct TagMismatchError : Error {
  using Error::Error;
};

/// Symbolic object tag of the PER category: the reflexive object D, finite
/// products (the empty product is the terminal object 1, the n-ary power of
/// D doubles as the case-binding object), and exponentials. Tags carry no
/// semantic content; they exist to catch plumbing mistakes when composing
/// representatives.
class Obj {
 public:
  enum class Kind { d, prod, exp };

  static Obj d() { return Obj(Kind::d, {}); }
  static Obj unit() { return Obj(Kind::prod, {}); }
  static Obj prod(std::vector<Obj> components) { return Obj(Kind::prod, std::move(components)); }
  static Obj pow(std::size_t k);  // D^k, the k-ary product of D
  static Obj exp(Obj from, Obj to) { return Obj(Kind::exp, {std::move(from), std::move(to)}); }

  Kind kind() const { return kind_; }
  bool is_prod() const { return kind_ == Kind::prod; }
  const std::vector<Obj>& components() const { return parts_; }
  const Obj& exp_from() const { return parts_[0]; }
  const Obj& exp_to() const { return parts_[1]; }

  bool operator==(const Obj& o) const;
  std::string to_string() const;

 private:
  Obj(Kind kind, std::vector<Obj> parts) : kind_(kind), parts_(std::move(parts)) {}
  Kind kind_;
  std::vector<Obj> parts_;
};

/// A morphism of the PER category, given by a single representative term of
/// its equivalence class. All equalities between morphisms are decided as
/// bounded convertibility of representatives.
struct MorphismRep {
  Term rep;
  Obj source;
  Obj target;
};

/// Church tuple <t1,...,tk> = \f. f t1 ... tk (k >= 1).
Term church_tuple(const std::vector<Term>& components);
/// Church projection proj[k]i = \p. p (\x1...xk. xi) (1 <= i <= k).
Term church_proj(std::size_t k, std::size_t i);

MorphismRep morphism_id(Obj a);
/// Diagrammatic composition f;g, representative \z. g (f z).
MorphismRep morphism_compose(const MorphismRep& f, const MorphismRep& g);
/// Pairing <f1,...,fk> of morphisms out of a common source, representative
/// \x. <f1 x, ..., fk x>.
MorphismRep morphism_pair(const std::vector<MorphismRep>& fs);
MorphismRep morphism_pair(const MorphismRep& f, const MorphismRep& g);
/// i-th projection out of a product object (1-based).
MorphismRep morphism_proj(const Obj& product, std::size_t i);
/// f x g : A x C -> B x E, representative \x. <f (proj1 x), g (proj2 x)>.
MorphismRep morphism_product(const MorphismRep& f, const MorphismRep& g);
/// Currying of f : C x A -> B, representative \x.\y. f <x, y>.
MorphismRep morphism_curry(const MorphismRep& f);
/// Evaluation ev : B^A x A -> B, representative \x. (proj1 x) (proj2 x).
MorphismRep morphism_ev(Obj a, Obj b);
/// The unique morphism into the terminal object; any term represents it.
MorphismRep morphism_terminal(Obj a);

/// Constants of the syntactic model: D is conversion itself, lam and app are
/// identities, fc(c) = \x.c, fail = \x.{}.c1, and case dispatches a Church
/// n-tuple of branches on the scrutinee.
class ModelConstants {
 public:
  explicit ModelConstants(Signature sig) : sig_(std::move(sig)) {}

  const Signature& signature() const { return sig_; }
  Obj binding_object() const { return Obj::pow(sig_.size()); }  // the case-binding object

  MorphismRep fc(const Name& constructor) const;  // 1 -> D
  MorphismRep case_morphism() const;              // D^n x D -> D
  MorphismRep fail() const;                       // 1 -> D
  MorphismRep lam_morphism() const;               // D^D -> D, identity representative
  MorphismRep app_morphism() const;               // D -> D^D, identity representative

 private:
  Signature sig_;
};

/// Closed-form interpretation of t in context G = x1...xk: the class of
/// \x. cpl(t){xi := proj[k]i x} with x fresh, a morphism D^k -> D.
MorphismRep interpret(const Signature& sig, const Context& ctx, const Term& t);

/// Compositional interpretation built from the morphism algebra and the
/// model constants only; an independent route to the same class as
/// `interpret`.
MorphismRep interpret_figure3(const Signature& sig, const Context& ctx, const Term& t);

enum class Diagram { d1, d2, d3, d4, d5, d6 };

const char* diagram_name(Diagram d);

/// Builds the two composite representatives of the named commuting diagram
/// and decides their convertibility by bounded joint reduction. D2 is
/// checked for every constructor slot.
Verdict check_diagram(const Signature& sig, Diagram d, std::size_t fuel);

}  // namespace lcc
