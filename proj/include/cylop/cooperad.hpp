#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cylop/combinatorics.hpp"
#include "cylop/linear.hpp"
#include "cylop/tree.hpp"

namespace cylop {

// One term c * (lower (x) upper) of an elementary coinsertion. Index 0 of
// arity 1 is the counit 1 in C(1).
struct CoTerm {
  Scalar coeff;
  int lower = 0;
  int upper = 0;
};

struct Report {
  bool ok = true;
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void check(bool cond, const std::string& what) {
    ++checks;
    if (!cond) {
      ok = false;
      if (failures.size() < 200) failures.push_back(what);
    }
  }
  void merge(const Report& r) {
    checks += r.checks;
    ok = ok && r.ok;
    for (const auto& f : r.failures)
      if (failures.size() < 200) failures.push_back(f);
  }
};

// A reduced cooperad presented up to an arity cap: graded bases of C(n)
// (C(1) = k is implicit), the internal differential, elementary
// coinsertions Delta_i : C(n+k-1) -> C(n) (x) C(k) and the symmetric action.
// Convention for the action: the corolla (x; c) with inputs labelled by c
// equals (act(p) x; c o p).
class Cooperad {
 public:
  Cooperad() = default;
  Cooperad(std::string name, int cap);

  const std::string& name() const { return name_; }
  int cap() const { return cap_; }

  int dim(int n) const;
  int degree(int n, int g) const;
  const std::string& label(int n, int g) const;
  const GradedBasis& basis(int n) const;
  int find_label(int n, const std::string& label) const;

  const SparseVector& differential(int n, int g) const;
  // Delta_i on g in C(n+k-1); i is 1-based.
  const std::vector<CoTerm>& coinsertion(int n, int k, int i, int g) const;
  // act(p) on g in C(n).
  SparseVector act(const Perm& p, int g) const;
  bool trivial_action(int n) const;

  // Splits g in C(m) along the input positions S (0-based, sorted): the
  // upper factor takes the inputs in S in increasing order, the lower one
  // the remaining inputs and the new edge, ordered by smallest position.
  std::vector<CoTerm> split(int m, int g, const std::vector<int>& S) const;

  // Comultiplication along a canonical tree shape with `m` leaves; keys are
  // decoration indices per vertex (preorder). `cut_order` lists non-root
  // vertices whose incoming edge is cut, in order; empty means preorder.
  std::map<std::vector<int>, Scalar> delta_tree(int m, int g, const Tree& shape,
                                                const std::vector<int>& cut_order = {}) const;

  // Construction interface.
  void set_basis(int n, GradedBasis b);
  void set_differential(int n, int g, SparseVector v);
  void set_coinsertion(int n, int k, int i, int g, std::vector<CoTerm> terms);
  // Stores generator matrices for the action and closes them under
  // composition; columns are images of basis vectors.
  void set_action(int n, const std::vector<std::pair<Perm, std::vector<SparseVector>>>& gens);
  // Default counit components and trivial actions where unspecified.
  void finalize();

  const std::vector<std::pair<Perm, std::vector<SparseVector>>>& action_generators(int n) const;
  bool has_coinsertion(int n, int k, int i) const;

 private:
  std::string name_;
  int cap_ = 0;
  std::vector<GradedBasis> bases_;                    // index n
  std::vector<std::vector<SparseVector>> diff_;       // [n][g]
  std::map<std::tuple<int, int, int>, std::vector<std::vector<CoTerm>>> coins_;
  std::vector<std::map<Perm, std::vector<SparseVector>>> action_;  // [n][perm][g]
  std::vector<std::vector<std::pair<Perm, std::vector<SparseVector>>>> action_gens_;
  std::vector<bool> trivial_;
  static const std::vector<CoTerm> empty_terms_;
  static const SparseVector empty_vec_;
};

Report validate(const Cooperad& C);

Cooperad builtin_cocom(int N);
Cooperad builtin_cocom_eps(int N);
Cooperad builtin_coass(int N);
Cooperad builtin_binary_trivial();
Cooperad builtin_two_level();
// "cocom:4", "coass:3", "binary_trivial", "two_level", "cocom_eps:3".
Cooperad builtin_by_name(const std::string& spec);

}  // namespace cylop
