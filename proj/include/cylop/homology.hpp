#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cylop/cylinder.hpp"

namespace cylop {

enum class Which : int { Cobar = 0, CylBeta = 1 };

// A fixed-arity component of Cobar(C) or Cyl(C)(n,0;beta) as a cochain
// complex: basis trees per degree and the differential from degree d to d+1.
struct ComplexSlice {
  int arity = 0;
  Which which = Which::Cobar;
  bool weight0 = false;
  std::map<int, std::vector<Tree>> basis;
  std::map<int, std::map<Tree, int>> index;
  std::map<int, LinearMapRep> d;

  std::string provenance() const;
  std::size_t dim(int deg) const;
  // Coordinates of a homogeneous element of the given degree; throws when a
  // tree is not in the basis.
  SparseVector coordinates(int deg, const OperadElement& e) const;
  std::vector<int> degrees() const;
};

ComplexSlice assemble(const CylContext& ctx, int n, Which which, bool weight0);
// Cohomology rank per degree.
std::map<int, int> ranks(const ComplexSlice& c);

using ElementMap = std::function<OperadElement(const OperadElement&)>;

struct DegreeReport {
  int source_rank = 0;
  int target_rank = 0;
  int induced_rank = 0;
};

struct QuasiIsoReport {
  bool chain_map = true;
  bool iso = true;
  bool zero_on_cohomology = true;
  std::map<int, DegreeReport> per_degree;
  std::vector<std::string> failures;
};

// Matrix of a degree-preserving map between slices at a degree.
LinearMapRep map_matrix(const ComplexSlice& src, const ComplexSlice& tgt, int deg, const ElementMap& f);
// Checks the chain-map property, then computes the induced map on
// cohomology per degree.
QuasiIsoReport verify_quasi_iso(const ComplexSlice& src, const ComplexSlice& tgt, const ElementMap& f);

}  // namespace cylop
