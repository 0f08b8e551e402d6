#include "cylop/homology.hpp"

#include <set>

namespace cylop {

namespace {

GradedBasis tree_basis(const FreeOperad& F, const std::vector<Tree>& trees) {
  std::vector<BasisEntry> b;
  for (const auto& t : trees) b.push_back({t.str(), F.degree(t)});
  return GradedBasis(b);
}

const std::vector<Tree> no_trees;

}  // namespace

std::string ComplexSlice::provenance() const {
  return std::string(which == Which::Cobar ? "cobar" : "cyl_beta") + "(" + std::to_string(arity) + ")/" +
         (weight0 ? "weight0" : "full");
}

std::size_t ComplexSlice::dim(int deg) const {
  auto it = basis.find(deg);
  return it == basis.end() ? 0 : it->second.size();
}

std::vector<int> ComplexSlice::degrees() const {
  std::vector<int> out;
  for (const auto& kv : basis) out.push_back(kv.first);
  return out;
}

SparseVector ComplexSlice::coordinates(int deg, const OperadElement& e) const {
  SparseVector v;
  if (e.is_zero()) return v;
  auto it = index.find(deg);
  if (it == index.end()) throw InvalidInput("no basis in degree " + std::to_string(deg) + " of " + provenance());
  for (const auto& [t, c] : e.terms) {
    auto jt = it->second.find(t);
    if (jt == it->second.end())
      throw InvalidInput("tree " + t.str() + " is not a basis element of " + provenance() + " in degree " +
                         std::to_string(deg));
    v[jt->second] = c;
  }
  return v;
}

ComplexSlice assemble(const CylContext& ctx, int n, Which which, bool weight0) {
  if (n < 1 || n > ctx.cap()) throw InvalidInput("arity out of range for the cooperad cap");
  const FreeOperad& F = ctx.free();
  ComplexSlice c;
  c.arity = n;
  c.which = which;
  c.weight0 = weight0;
  const auto& trees = which == Which::Cobar ? ctx.cobar_basis(n) : ctx.cyl_basis(n);
  for (const auto& t : trees) c.basis[F.degree(t)].push_back(t);
  for (auto& [deg, ts] : c.basis)
    for (std::size_t j = 0; j < ts.size(); ++j) c.index[deg][ts[j]] = static_cast<int>(j);
  for (const auto& [deg, ts] : c.basis) {
    auto nt = c.basis.find(deg + 1);
    const auto& next = nt == c.basis.end() ? no_trees : nt->second;
    LinearMapRep m(tree_basis(F, ts), tree_basis(F, next), 1);
    for (std::size_t j = 0; j < ts.size(); ++j) {
      OperadElement img = ctx.diff(F.element(ts[j]), weight0);
      m.columns[j] = c.coordinates(deg + 1, img);
    }
    c.d.emplace(deg, std::move(m));
  }
  for (const auto& [deg, m] : c.d) {
    auto nt = c.d.find(deg + 1);
    if (nt == c.d.end()) continue;
    for (const auto& col : m.columns)
      if (!nt->second.apply(col).empty()) throw InvalidInput("d^2 != 0 while assembling " + c.provenance());
  }
  return c;
}

std::map<int, int> ranks(const ComplexSlice& c) {
  std::map<int, int> out;
  for (const auto& [deg, ts] : c.basis) {
    const int dim = static_cast<int>(ts.size());
    const int r_out = static_cast<int>(rank(c.d.at(deg)));
    auto prev = c.d.find(deg - 1);
    const int r_in = prev == c.d.end() ? 0 : static_cast<int>(rank(prev->second));
    out[deg] = dim - r_out - r_in;
  }
  return out;
}

LinearMapRep map_matrix(const ComplexSlice& src, const ComplexSlice& tgt, int deg, const ElementMap& f) {
  auto st = src.basis.find(deg);
  auto tt = tgt.basis.find(deg);
  const auto& sb = st == src.basis.end() ? no_trees : st->second;
  const auto& tb = tt == tgt.basis.end() ? no_trees : tt->second;
  LinearMapRep m(GradedBasis::anonymous(sb.size(), deg), GradedBasis::anonymous(tb.size(), deg), 0);
  if (sb.empty()) return m;
  for (std::size_t j = 0; j < sb.size(); ++j) {
    OperadElement e = OperadElement::zero(src.arity, src.which == Which::Cobar ? Color::Alpha : Color::Beta,
                                          Color::Alpha);
    e.terms.emplace(sb[j], 1);
    m.columns[j] = tgt.coordinates(deg, f(e));
  }
  return m;
}

QuasiIsoReport verify_quasi_iso(const ComplexSlice& src, const ComplexSlice& tgt, const ElementMap& f) {
  QuasiIsoReport rep;
  std::map<int, LinearMapRep> fm;
  std::set<int> degs;
  for (const auto& kv : src.basis) degs.insert(kv.first);
  for (const auto& kv : tgt.basis) degs.insert(kv.first);
  for (int d : degs) fm.emplace(d, map_matrix(src, tgt, d, f));
  auto dmap = [](const ComplexSlice& c, int d, const SparseVector& v) {
    auto it = c.d.find(d);
    return it == c.d.end() ? SparseVector{} : it->second.apply(v);
  };
  // Chain map: d_tgt F = F d_src on every basis element.
  for (int d : degs) {
    const auto& F = fm.at(d);
    for (std::size_t j = 0; j < F.cols(); ++j) {
      SparseVector lhs = dmap(tgt, d, F.columns[j]);
      SparseVector e;
      e[static_cast<int>(j)] = 1;
      SparseVector ds = dmap(src, d, e);
      auto nf = fm.find(d + 1);
      SparseVector rhs = nf == fm.end() ? SparseVector{} : nf->second.apply(ds);
      if (lhs != rhs) {
        rep.chain_map = false;
        rep.failures.push_back("not a chain map on " + src.basis.at(d)[j].str());
      }
    }
  }
  if (!rep.chain_map) {
    rep.iso = false;
    rep.zero_on_cohomology = false;
    return rep;
  }
  auto hs = ranks(src), ht = ranks(tgt);
  for (int d : degs) {
    DegreeReport dr;
    dr.source_rank = hs.count(d) ? hs[d] : 0;
    dr.target_rank = ht.count(d) ? ht[d] : 0;
    Echelon E;
    auto prev = tgt.d.find(d - 1);
    if (prev != tgt.d.end())
      for (const auto& col : prev->second.columns) E.insert(col);
    const std::size_t base = E.rank();
    std::vector<SparseVector> cycles;
    auto sd = src.d.find(d);
    if (sd != src.d.end()) {
      cycles = kernel_basis(sd->second);
    } else {
      for (std::size_t j = 0; j < src.dim(d); ++j) cycles.push_back(SparseVector{{static_cast<int>(j), Scalar(1)}});
    }
    for (const auto& z : cycles) E.insert(fm.at(d).apply(z));
    dr.induced_rank = static_cast<int>(E.rank() - base);
    if (dr.induced_rank != 0) rep.zero_on_cohomology = false;
    if (dr.induced_rank != dr.source_rank || dr.induced_rank != dr.target_rank) {
      rep.iso = false;
      rep.failures.push_back("degree " + std::to_string(d) + ": H(src)=" + std::to_string(dr.source_rank) +
                             " H(tgt)=" + std::to_string(dr.target_rank) +
                             " induced=" + std::to_string(dr.induced_rank));
    }
    rep.per_degree[d] = dr;
  }
  return rep;
}

}  // namespace cylop
