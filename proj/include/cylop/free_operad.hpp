#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cylop/cooperad.hpp"
#include "cylop/tree.hpp"

namespace cylop {

using Terms = std::map<Tree, Scalar>;

void add_term(Terms& terms, const Tree& t, const Scalar& c);

// A finite linear combination of canonical decorated trees with a fixed
// color profile: `in[l-1]` is the color of the leaf labelled l.
struct OperadElement {
  int arity = 1;
  Color out = Color::Alpha;
  std::vector<Color> in{Color::Alpha};
  Terms terms;

  static OperadElement zero(int arity, Color out, std::vector<Color> in);
  static OperadElement zero(int arity, Color out, Color in);
  bool is_zero() const { return terms.empty(); }
  void add(const Tree& t, const Scalar& c) { add_term(terms, t, c); }

  OperadElement& operator+=(const OperadElement& o);
  OperadElement& operator-=(const OperadElement& o);
  OperadElement& operator*=(const Scalar& s);
  friend OperadElement operator+(OperadElement a, const OperadElement& b) { return a += b; }
  friend OperadElement operator-(OperadElement a, const OperadElement& b) { return a -= b; }
  friend OperadElement operator*(const Scalar& s, OperadElement a) { return a *= s; }
  friend bool operator==(const OperadElement& a, const OperadElement& b) {
    return a.arity == b.arity && a.out == b.out && a.in == b.in && a.terms == b.terms;
  }
  std::string str() const;
};

// The free (2-colored) operad on the collection of cooperad generators:
// Alpha/Beta vertices carry s x for x in C(n), n >= 2; Mixed vertices carry
// x in C(n), n >= 1.
class FreeOperad {
 public:
  explicit FreeOperad(const Cooperad& C) : C_(&C) {}
  const Cooperad& cooperad() const { return *C_; }

  int vertex_degree(const Vertex& v) const;
  int degree(const Tree& t) const;
  // Degree when homogeneous, nullopt otherwise (zero has no degree).
  std::optional<int> degree(const OperadElement& e) const;

  // Canonical form of an arbitrary (raw) tree: children sorted by minimum
  // leaf, vertices in preorder, decorations transformed by the action and
  // the Koszul sign of the vertex reordering applied.
  void canonicalize_into(const Tree& raw, const Scalar& coeff, Terms& out) const;
  Terms canonicalize(const Tree& raw) const;
  OperadElement element(const Tree& raw, const Scalar& coeff = 1) const;

  OperadElement corolla(Kind kind, int arity, int gen) const;
  OperadElement trivial() const { return corolla(Kind::Mixed, 1, 0); }
  OperadElement unit(Color c) const;

  OperadElement compose(const OperadElement& a, int i, const OperadElement& b) const;
  // Leaf l becomes perm[l-1]+1.
  OperadElement relabel(const OperadElement& e, const Perm& perm) const;

  // Replaces vertex v of the canonical tree t by a value element whose
  // leaves j correspond to the children of v; Koszul signs come from the
  // position of v in the vertex order.
  OperadElement substitute(const Tree& t, int v, const OperadElement& value) const;
  // Replaces every vertex u by values[u] (nullptr keeps the vertex).
  OperadElement substitute_all(const Tree& t, const std::vector<const OperadElement*>& values) const;
  OperadElement mu_tree(const Tree& shape, const std::vector<OperadElement>& decorations) const;

  OperadElement weight_part(const OperadElement& e, int w) const;
  OperadElement recolor(const OperadElement& e, Kind from, Kind to, Color in, Color out) const;

 private:
  const Cooperad* C_;
};

// Profile of the generator of a given kind and arity.
std::vector<Color> input_profile(Kind k, int arity);

}  // namespace cylop
