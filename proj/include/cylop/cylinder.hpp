#pragma once

#include <functional>
#include <map>
#include <vector>

#include "cylop/free_operad.hpp"

namespace cylop {

enum class Flavor : int { Cobar = 0, Cyl = 1 };

// A generator of Cobar(C) (Alpha) or of Cyl(C): s x^a, s x^b, x^{ab}.
// The trivial generator 1^{ab} is {Mixed, 1, 0}.
struct Gen {
  Kind kind = Kind::Alpha;
  int arity = 2;
  int idx = 0;

  bool trivial() const { return kind == Kind::Mixed && arity == 1; }
  friend bool operator==(const Gen&, const Gen&) = default;
  friend bool operator<(const Gen& a, const Gen& b) {
    if (a.arity != b.arity) return a.arity < b.arity;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.idx < b.idx;
  }
};

Gen gen_of(const Vertex& v);

// Cobar(C) and Cyl(C) over a cooperad: generator differentials (full and
// weight-preserving), their derivation extension, bases per arity and the
// comparison maps iota_alpha, iota_beta, h and Pi.
class CylContext {
 public:
  explicit CylContext(const Cooperad& C);
  CylContext(const CylContext&) = delete;
  CylContext& operator=(const CylContext&) = delete;

  const Cooperad& cooperad() const { return *C_; }
  const FreeOperad& free() const { return F_; }
  int cap() const { return C_->cap(); }

  // Generators up to the cap. Cobar: Alpha only. Cyl: Alpha, Beta and
  // Mixed of arity >= 2 (the trivial generator is excluded).
  std::vector<Gen> generators(Flavor f, int max_arity = -1) const;
  int gen_degree(const Gen& g) const;
  OperadElement gen_element(const Gen& g) const;
  OperadElement zero_like(const Gen& g) const;
  const OperadElement& gen_diff(const Gen& g, bool weight0 = false) const;

  // Derivation extension: values(v) gives the image of the generator at a
  // vertex (nullptr for zero); degree is the derivation degree.
  using ValueFn = std::function<const OperadElement*(const Gen&)>;
  OperadElement extend(const ValueFn& values, int degree, const OperadElement& e) const;
  OperadElement diff(const OperadElement& e, bool weight0 = false) const;

  // Bases of Cobar(C)(n) (Alpha trees) and Cyl(C)(n,0;beta).
  const std::vector<Tree>& cobar_basis(int n) const;
  const std::vector<Tree>& cyl_basis(int n) const;
  // Basis trees of the component where the generator's value lives.
  const std::vector<Tree>& target_basis(const Gen& g) const;

  OperadElement iota_alpha(const OperadElement& X) const;
  OperadElement iota_beta(const OperadElement& X) const;
  OperadElement homotopy_h(const OperadElement& X) const;
  OperadElement projection_pi(const OperadElement& e) const;
  // Recolors an all-Alpha element to Beta and back.
  OperadElement to_beta(const OperadElement& X) const;
  OperadElement to_alpha(const OperadElement& X) const;

  // Delta_C applied vertexwise to a Cobar element (the weight-0 part of the
  // cobar differential).
  OperadElement delta_c(const OperadElement& X) const { return diff(X, true); }

 private:
  OperadElement compute_diff(const Gen& g) const;

  const Cooperad* C_;
  FreeOperad F_;
  std::map<Gen, OperadElement> diff_, diff0_;
  mutable std::map<int, std::vector<Tree>> cobar_basis_, cyl_basis_, beta_basis_;
};

// Convenience wrappers matching the cobar and cylinder operations.
OperadElement cobar_diff(const CylContext& ctx, const OperadElement& e);
OperadElement cyl_diff(const CylContext& ctx, const OperadElement& e);
OperadElement cyl_diff0(const CylContext& ctx, const OperadElement& e);
// Applies the cobar differential twice to every generator of arity n.
Report d_squared_check(const CylContext& ctx, int n);
// d^2 = 0 on every basis element of Cobar(n) and Cyl(n,0;beta), for the full
// and the weight-0 differential.
Report d_squared_basis_check(const CylContext& ctx, int n);

}  // namespace cylop
