#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cylop/cylinder.hpp"

namespace cylop {

// A derivation of Cobar(C) or Cyl(C), stored by its values on generators.
// Missing generators map to zero; the trivial vertex is always annihilated.
struct Derivation {
  Flavor flavor = Flavor::Cobar;
  int degree = 0;
  std::map<Gen, OperadElement> values;

  const OperadElement* value(const Gen& g) const;
  bool is_zero() const;
  void prune();

  Derivation& operator+=(const Derivation& o);
  Derivation& operator-=(const Derivation& o);
  Derivation& operator*=(const Scalar& s);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  friend Derivation operator*(const Scalar& s, Derivation a) { return a *= s; }
  friend bool operator==(const Derivation& a, const Derivation& b);
};

Derivation zero_derivation(Flavor f, int degree);
// Smallest weight increase over all stored terms; a large value for zero.
int weight_floor(const Derivation& D);
bool in_der_prime(const Derivation& D);

OperadElement der_extend(const CylContext& ctx, const Derivation& D, const OperadElement& e);
Derivation der_bracket(const CylContext& ctx, const Derivation& a, const Derivation& b);
// [d, D] for the differential d of the derivation's flavor.
Derivation der_diff(const CylContext& ctx, const Derivation& D);
// The differential itself as a degree-1 derivation.
Derivation differential_derivation(const CylContext& ctx, Flavor f);
// Equivariance D(act(p) x) = relabel(D(x), p^{-1}) on adjacent transpositions.
Report check_equivariance(const CylContext& ctx, const Derivation& D);

Derivation res_alpha(const CylContext& ctx, const Derivation& D);
Derivation res_beta(const CylContext& ctx, const Derivation& D);
// T(s x) = (-1)^{|D|} Pi(D(x^{ab})) for a closed Cyl derivation; the
// identity res_alpha - res_beta = [d, T] is checked before returning.
Derivation pi_transfer(const CylContext& ctx, const Derivation& D);

// An operad morphism by its generator values; missing generators are fixed.
struct Morphism {
  Flavor flavor = Flavor::Cobar;
  std::map<Gen, OperadElement> values;
};

Morphism identity_morphism(Flavor f);
OperadElement apply_morphism(const CylContext& ctx, const Morphism& M, const OperadElement& e);
// (a o b)(g) = a(b(g)).
Morphism compose_morphisms(const CylContext& ctx, const Morphism& a, const Morphism& b);
bool morphisms_equal(const CylContext& ctx, const Morphism& a, const Morphism& b);
// M(d g) = d M(g) on every generator.
Report check_chain_morphism(const CylContext& ctx, const Morphism& M);

// exp(D) = sum D^m / m! for a degree-0 derivation in Der'. Closedness is
// required unless require_closed is false.
Morphism exp_derivation(const CylContext& ctx, const Derivation& D, bool require_closed = true);

// log(e^X e^Y) as a Lie series evaluated with der_bracket.
Derivation ch_compose(const CylContext& ctx, const Derivation& a, const Derivation& b);
// Coefficients of the Lie series of log(e^X e^Y) up to total degree N, as
// left-normed bracket words over {0 = X, 1 = Y} (Dynkin form).
std::map<std::vector<int>, Scalar> ch_series(int N);

// Basis of the space of equivariant derivations of the given degree whose
// values raise weight by at least min_gain, optionally closed, up to
// max_arity (-1: the cap).
std::vector<Derivation> derivation_space(const CylContext& ctx, Flavor f, int degree, int min_gain, bool closed,
                                         int max_arity = -1);
Derivation random_combination(const std::vector<Derivation>& basis, std::mt19937_64& rng, Flavor f, int degree,
                              int spread = 2);

struct LiftResult {
  Derivation lifted;
  Derivation t_alpha;
  Derivation t_beta;
  bool joint_fallback = false;
  std::vector<std::string> notes;
};

struct LiftFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Constructs a closed Cyl derivation D~ in Der' with res_alpha(D~) =
// D + [d, T_a] and res_beta(D~) = D + [d, T_b], arity by arity; falls back
// to a joint solve over all arities if a stage has no solution.
LiftResult lift_derivation(const CylContext& ctx, const Derivation& D);
Report check_lift(const CylContext& ctx, const Derivation& D, const LiftResult& r);

std::string str(const Derivation& D, const Cooperad& C);

}  // namespace cylop
