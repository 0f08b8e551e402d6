#pragma once

#include <map>
#include <string>
#include <vector>

#include "cylop/convolution.hpp"
#include "cylop/derivations.hpp"

namespace cylop {

// A finite-dimensional graded space with a degree +1 differential.
struct GradedSpace {
  GradedBasis basis;
  LinearMapRep d;

  GradedSpace() = default;
  // Zero differential.
  explicit GradedSpace(GradedBasis b);
  GradedSpace(GradedBasis b, LinearMapRep diff);

  std::size_t dim() const { return basis.size(); }
  int degree(std::size_t i) const { return basis.degree(i); }
};

// d has degree +1 and squares to zero.
Report validate_space(const GradedSpace& V);

// A multilinear map from the tensor product of the input spaces to the
// output space, as a dense matrix on lexicographic tensor bases (the first
// factor is the most significant digit).
struct MultiMap {
  int arity = 1;
  Color out = Color::Alpha;
  std::vector<Color> in{Color::Alpha};
  std::vector<std::size_t> in_dims{0};
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Scalar> data;

  Scalar& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  bool is_zero() const;
  friend bool operator==(const MultiMap& a, const MultiMap& b) {
    return a.arity == b.arity && a.out == b.out && a.in == b.in && a.data == b.data;
  }
};

// The (2-colored) endomorphism operad End_{V,W}; Alpha is V and Beta is W.
class EndTarget {
 public:
  using Elem = MultiMap;
  EndTarget(const GradedSpace& V, const GradedSpace& W) : V_(&V), W_(&W) {}

  const GradedSpace& space(Color c) const { return c == Color::Alpha ? *V_ : *W_; }

  Elem zero(int arity, Color out, const std::vector<Color>& in) const;
  Elem identity(Color c) const;
  Elem diff(const Elem& f) const;
  // f o_i g with i 0-based.
  Elem compose_at(const Elem& f, int i, const Elem& g) const;
  Elem compose_tree(const Tree& t, const std::vector<const Elem*>& values) const;
  Elem relabel(const Elem& f, const Perm& p) const;
  void axpy(Elem& y, const Scalar& a, const Elem& x) const;
  bool is_zero(const Elem& f) const { return f.is_zero(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  std::vector<Elem> component_basis(int arity, Color out, const std::vector<Color>& in, int degree) const;
  std::string str(const Elem& f) const;

  int entry_degree(const Elem& f, std::size_t r, std::size_t c) const;
  std::map<int, Elem> homogeneous_parts(const Elem& f) const;
  std::vector<std::size_t> digits(const Elem& f, std::size_t c) const;
  int tensor_degree(const Elem& f, std::size_t c) const;

 private:
  const GradedSpace* V_;
  const GradedSpace* W_;
};

// An algebra over Cobar(C) (values on Alpha generators, W unused) or over
// Cyl(C) (values on all generators including the trivial one).
struct AlgebraStructure {
  Flavor flavor = Flavor::Cobar;
  GradedSpace V;
  GradedSpace W;
  std::map<Gen, MultiMap> values;

  EndTarget target() const { return EndTarget(V, W); }
};

// Mixed-color components U_n (the trivial generator carries U_1).
struct InfinityMorphism {
  std::map<Gen, MultiMap> components;
};

struct Triple {
  AlgebraStructure FV;
  AlgebraStructure FW;
  InfinityMorphism U;
};

AlgebraStructure zero_structure(const CylContext& ctx, Flavor f, const GradedSpace& V, const GradedSpace& W);

// F evaluated on an element of the free operad (operad-map extension).
MultiMap evaluate(const CylContext& ctx, const AlgebraStructure& F, const OperadElement& e);

// Chain condition F(d g) = d F(g), degrees and equivariance on every
// generator, and the Maurer-Cartan cross-check in the convolution algebra.
Report validate_structure(const CylContext& ctx, const AlgebraStructure& F);

AlgebraStructure assemble_cyl_algebra(const CylContext& ctx, const Triple& t);
Triple split_cyl_algebra(const AlgebraStructure& F);

// F o phi for an endomorphism phi of the matching flavor.
AlgebraStructure twist_structure(const CylContext& ctx, const AlgebraStructure& F, const Morphism& phi);

// Restrictions of a Cyl(C) morphism to the colors, as Cobar(C) morphisms.
Morphism restrict_alpha(const CylContext& ctx, const Morphism& phi);
Morphism restrict_beta(const CylContext& ctx, const Morphism& phi);

// The weight-0 part of phi(g) is g on every generator.
Report check_aut_prime(const CylContext& ctx, const Morphism& phi);

struct NamedReport {
  std::string name;
  Report report;
};

struct TransportCertificate {
  LiftResult lift;
  Triple output;
  std::vector<NamedReport> checks;
  bool green() const;
};

// From a closed degree-0 Der' derivation of Cobar(C): lift to D~, twist the
// Cyl(C)-algebra of the triple by exp(D~) and split.
TransportCertificate transport_pipeline(const CylContext& ctx, const Triple& input, const Derivation& D);
// Twisting the assembled algebra by exp(D~).
Triple transport_with_lift(const CylContext& ctx, const Triple& input, const Derivation& lifted);
// Twisting by D~1 then D~2 equals twisting by ch(D~1, D~2).
Report iteration_law_check(const CylContext& ctx, const Triple& input, const Derivation& a, const Derivation& b);

// Basis of the equivariant generator-value assignments of the given kinds
// (values in degree |g|).
std::vector<std::map<Gen, MultiMap>> equivariant_assignments(const CylContext& ctx, const EndTarget& T,
                                                             const std::vector<Gen>& gens);
// All Cobar(C)-algebra structures on V whose coordinates in the
// equivariant basis lie in {-1, 0, 1}.
std::vector<AlgebraStructure> brute_force_structures(const CylContext& ctx, const GradedSpace& V,
                                                     std::size_t max_params = 12);
// All infinity-morphisms between two Cobar(C)-algebras with coordinates in
// {-1, 0, 1}.
std::vector<InfinityMorphism> brute_force_morphisms(const CylContext& ctx, const AlgebraStructure& FV,
                                                    const AlgebraStructure& FW, std::size_t max_params = 12);

// Staged solver: arity-2 coordinates (and U_1) range over {-1, 0, 1}; each
// higher arity is solved exactly from the chain condition, which is affine
// in the top-arity unknowns. One structure per solvable arity-2 choice.
std::vector<AlgebraStructure> staged_structures(const CylContext& ctx, const GradedSpace& V,
                                                std::size_t max_params = 12);
std::vector<InfinityMorphism> staged_morphisms(const CylContext& ctx, const AlgebraStructure& FV,
                                               const AlgebraStructure& FW, std::size_t max_params = 12);

}  // namespace cylop
