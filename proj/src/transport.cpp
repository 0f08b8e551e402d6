#include "cylop/transport.hpp"

#include <functional>
#include <sstream>

namespace cylop {

namespace {

std::vector<std::size_t> dims_of(const EndTarget& T, const std::vector<Color>& in) {
  std::vector<std::size_t> d;
  for (Color c : in) d.push_back(T.space(c).dim());
  return d;
}

std::size_t product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

std::size_t index_of(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& digits) {
  std::size_t c = 0;
  for (std::size_t j = 0; j < dims.size(); ++j) c = c * dims[j] + digits[j];
  return c;
}

Scalar dense_at(const LinearMapRep& m, std::size_t r, std::size_t c) { return m.at(r, c); }

std::vector<Gen> cobar_gens(const CylContext& ctx) { return ctx.generators(Flavor::Cobar); }

std::vector<Gen> cyl_gens(const CylContext& ctx) {
  std::vector<Gen> g{Gen{Kind::Mixed, 1, 0}};
  for (const Gen& x : ctx.generators(Flavor::Cyl)) g.push_back(x);
  return g;
}

std::vector<Gen> structure_gens(const CylContext& ctx, Flavor f) {
  return f == Flavor::Cobar ? cobar_gens(ctx) : cyl_gens(ctx);
}

std::string gen_text(const CylContext& ctx, const Gen& g) {
  if (g.trivial()) return "1^ab";
  const std::string l = ctx.cooperad().label(g.arity, g.idx);
  switch (g.kind) {
    case Kind::Alpha: return "s" + l + "^a";
    case Kind::Beta: return "s" + l + "^b";
    default: return l + "^ab";
  }
}

// Morphism value on a generator (missing: the generator itself).
OperadElement morphism_value(const CylContext& ctx, const Morphism& phi, const Gen& g) {
  auto it = phi.values.find(g);
  return it == phi.values.end() ? ctx.gen_element(g) : it->second;
}

}  // namespace

GradedSpace::GradedSpace(GradedBasis b) : basis(b), d(b, b, 1) {}
GradedSpace::GradedSpace(GradedBasis b, LinearMapRep diff) : basis(std::move(b)), d(std::move(diff)) {}

Report validate_space(const GradedSpace& V) {
  Report r;
  r.check(V.d.rows() == V.dim() && V.d.cols() == V.dim(), "differential has the wrong shape");
  if (!r.ok) return r;
  for (std::size_t c = 0; c < V.dim(); ++c)
    for (const auto& [row, v] : V.d.columns[c])
      r.check(V.degree(static_cast<std::size_t>(row)) == V.degree(c) + 1,
              "differential entry (" + std::to_string(row) + "," + std::to_string(c) + ") has the wrong degree");
  for (std::size_t c = 0; c < V.dim(); ++c)
    r.check(V.d.apply(V.d.columns[c]).empty(), "d^2 != 0 on basis vector " + V.basis[c].label);
  return r;
}

bool MultiMap::is_zero() const {
  for (const auto& x : data)
    if (x != 0) return false;
  return true;
}

MultiMap EndTarget::zero(int arity, Color out, const std::vector<Color>& in) const {
  MultiMap f;
  f.arity = arity;
  f.out = out;
  f.in = in;
  f.in_dims = dims_of(*this, in);
  f.rows = space(out).dim();
  f.cols = product(f.in_dims);
  f.data.assign(f.rows * f.cols, Scalar(0));
  return f;
}

MultiMap EndTarget::identity(Color c) const {
  MultiMap f = zero(1, c, {c});
  for (std::size_t i = 0; i < f.rows; ++i) f.at(i, i) = 1;
  return f;
}

std::vector<std::size_t> EndTarget::digits(const MultiMap& f, std::size_t c) const {
  std::vector<std::size_t> d(f.in_dims.size());
  for (std::size_t j = f.in_dims.size(); j-- > 0;) {
    d[j] = c % f.in_dims[j];
    c /= f.in_dims[j];
  }
  return d;
}

int EndTarget::tensor_degree(const MultiMap& f, std::size_t c) const {
  auto d = digits(f, c);
  int deg = 0;
  for (std::size_t j = 0; j < d.size(); ++j) deg += space(f.in[j]).degree(d[j]);
  return deg;
}

int EndTarget::entry_degree(const MultiMap& f, std::size_t r, std::size_t c) const {
  return space(f.out).degree(r) - tensor_degree(f, c);
}

std::map<int, MultiMap> EndTarget::homogeneous_parts(const MultiMap& f) const {
  std::map<int, MultiMap> parts;
  for (std::size_t r = 0; r < f.rows; ++r)
    for (std::size_t c = 0; c < f.cols; ++c) {
      if (f.at(r, c) == 0) continue;
      const int d = entry_degree(f, r, c);
      auto it = parts.find(d);
      if (it == parts.end()) it = parts.emplace(d, zero(f.arity, f.out, f.in)).first;
      it->second.at(r, c) = f.at(r, c);
    }
  return parts;
}

void EndTarget::axpy(MultiMap& y, const Scalar& a, const MultiMap& x) const {
  if (y.arity != x.arity || y.out != x.out || y.in != x.in) throw InvalidInput("multilinear maps of different profiles");
  for (std::size_t k = 0; k < y.data.size(); ++k)
    if (x.data[k] != 0) y.data[k] += a * x.data[k];
}

// d_End f = d o f - (-1)^{|f|} f o d_tensor, entrywise in |f|.
MultiMap EndTarget::diff(const MultiMap& f) const {
  MultiMap r = zero(f.arity, f.out, f.in);
  const GradedSpace& O = space(f.out);
  for (std::size_t row = 0; row < f.rows; ++row)
    for (std::size_t c = 0; c < f.cols; ++c) {
      const Scalar& a = f.at(row, c);
      if (a == 0) continue;
      for (const auto& [r2, v] : O.d.columns[row]) r.at(static_cast<std::size_t>(r2), c) += v * a;
      // f o d_tensor: column c' whose image under d_tensor hits c.
      const bool odd = entry_degree(f, row, c) & 1;
      auto dg = digits(f, c);
      int before = 0;
      for (std::size_t j = 0; j < dg.size(); ++j) {
        const GradedSpace& S = space(f.in[j]);
        // d e_k has a component on e_{dg[j]} with coefficient d(dg[j], k).
        for (std::size_t k = 0; k < S.dim(); ++k) {
          const Scalar dk = dense_at(S.d, dg[j], k);
          if (dk == 0) continue;
          auto src = dg;
          src[j] = k;
          const std::size_t c2 = index_of(f.in_dims, src);
          Scalar term = a * dk;
          if (before & 1) term = -term;
          if (!odd) term = -term;
          r.at(row, c2) += term;
        }
        before += S.degree(dg[j]);
      }
    }
  return r;
}

MultiMap EndTarget::compose_at(const MultiMap& f, int i, const MultiMap& g) const {
  if (i < 0 || i >= f.arity) throw InvalidInput("composition slot out of range");
  if (f.in[i] != g.out) throw InvalidInput("composition colors do not match");
  std::vector<Color> in(f.in.begin(), f.in.begin() + i);
  in.insert(in.end(), g.in.begin(), g.in.end());
  in.insert(in.end(), f.in.begin() + i + 1, f.in.end());
  MultiMap r = zero(f.arity + g.arity - 1, f.out, in);
  for (std::size_t c = 0; c < r.cols; ++c) {
    auto dg = digits(r, c);
    std::vector<std::size_t> b(dg.begin() + i, dg.begin() + i + g.arity);
    const std::size_t gc = index_of(g.in_dims, b);
    int before = 0;
    for (int j = 0; j < i; ++j) before += space(in[j]).degree(dg[j]);
    std::vector<std::size_t> fd(dg.begin(), dg.begin() + i);
    fd.push_back(0);
    fd.insert(fd.end(), dg.begin() + i + g.arity, dg.end());
    for (std::size_t s = 0; s < g.rows; ++s) {
      const Scalar& gv = g.at(s, gc);
      if (gv == 0) continue;
      fd[i] = s;
      const std::size_t fc = index_of(f.in_dims, fd);
      Scalar coef = gv;
      if ((entry_degree(g, s, gc) & 1) && (before & 1)) coef = -coef;
      for (std::size_t row = 0; row < f.rows; ++row)
        if (f.at(row, fc) != 0) r.at(row, c) += coef * f.at(row, fc);
    }
  }
  return r;
}

// Leaf l becomes p(l): (relabel f)(v_1, ..., v_n) = +- f(v_{p(1)}, ..., v_{p(n)}).
MultiMap EndTarget::relabel(const MultiMap& f, const Perm& p) const {
  if (static_cast<int>(p.size()) != f.arity) throw InvalidInput("permutation size differs from arity");
  std::vector<Color> in(f.arity);
  for (int i = 0; i < f.arity; ++i) in[p[i]] = f.in[i];
  MultiMap r = zero(f.arity, f.out, in);
  for (std::size_t c = 0; c < r.cols; ++c) {
    auto dg = digits(r, c);
    std::vector<int> degs(f.arity);
    std::vector<std::size_t> fd(f.arity);
    for (int j = 0; j < f.arity; ++j) degs[j] = space(in[j]).degree(dg[j]);
    for (int i = 0; i < f.arity; ++i) fd[i] = dg[p[i]];
    const std::size_t fc = index_of(f.in_dims, fd);
    const bool neg = koszul_parity(p, degs);
    for (std::size_t row = 0; row < f.rows; ++row)
      if (f.at(row, fc) != 0) r.at(row, c) = neg ? Scalar(-f.at(row, fc)) : f.at(row, fc);
  }
  return r;
}

MultiMap EndTarget::compose_tree(const Tree& t, const std::vector<const MultiMap*>& values) const {
  if (t.bare()) throw InvalidInput("cannot evaluate the unit as a composite");
  const int m = t.num_vertices();
  std::vector<int> order;
  to_preorder(t, &order);
  std::vector<std::vector<std::pair<int, MultiMap>>> parts(m);
  for (int u = 0; u < m; ++u) {
    if (!values[u]) throw InvalidInput("missing vertex value");
    for (auto& [d, p] : homogeneous_parts(*values[u])) parts[u].emplace_back(d, std::move(p));
    if (parts[u].empty()) return zero(t.arity(), t.output(), t.leaf_colors());
  }
  MultiMap result = zero(t.arity(), t.output(), t.leaf_colors());
  std::vector<std::size_t> pick(m, 0);
  while (true) {
    std::vector<int> degs(m);
    for (int u = 0; u < m; ++u) degs[u] = parts[u][pick[u]].first;
    const bool neg = koszul_parity(order, degs);
    // Slots: vertex index (>= 0) or leaf label as -label.
    const int root = order[0];
    MultiMap P = parts[root][pick[root]].second;
    std::vector<int> slots = t.vertices[root].children;
    for (int k = 1; k < m; ++k) {
      const int u = order[k];
      std::size_t i = 0;
      while (i < slots.size() && slots[i] < 0) ++i;
      if (i == slots.size() || slots[i] != u) throw std::logic_error("tree evaluation lost preorder");
      P = compose_at(P, static_cast<int>(i), parts[u][pick[u]].second);
      const auto& ch = t.vertices[u].children;
      slots.erase(slots.begin() + static_cast<long>(i));
      slots.insert(slots.begin() + static_cast<long>(i), ch.begin(), ch.end());
    }
    Perm p(slots.size());
    for (std::size_t j = 0; j < slots.size(); ++j) p[j] = -slots[j] - 1;
    axpy(result, neg ? Scalar(-1) : Scalar(1), relabel(P, p));
    int u = 0;
    while (u < m && ++pick[u] == parts[u].size()) pick[u++] = 0;
    if (u == m) break;
  }
  return result;
}

std::vector<MultiMap> EndTarget::component_basis(int arity, Color out, const std::vector<Color>& in,
                                                 int degree) const {
  std::vector<MultiMap> b;
  MultiMap z = zero(arity, out, in);
  for (std::size_t r = 0; r < z.rows; ++r)
    for (std::size_t c = 0; c < z.cols; ++c)
      if (entry_degree(z, r, c) == degree) {
        MultiMap e = z;
        e.at(r, c) = 1;
        b.push_back(std::move(e));
      }
  return b;
}

std::string EndTarget::str(const MultiMap& f) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t r = 0; r < f.rows; ++r)
    for (std::size_t c = 0; c < f.cols; ++c) {
      if (f.at(r, c) == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << to_string(f.at(r, c)) << "*" << space(f.out).basis[r].label << "<-";
      auto dg = digits(f, c);
      for (std::size_t j = 0; j < dg.size(); ++j) os << (j ? "." : "") << space(f.in[j]).basis[dg[j]].label;
    }
  return first ? "0" : os.str();
}

AlgebraStructure zero_structure(const CylContext&, Flavor f, const GradedSpace& V, const GradedSpace& W) {
  AlgebraStructure F;
  F.flavor = f;
  F.V = V;
  F.W = f == Flavor::Cobar ? V : W;
  return F;
}

MultiMap evaluate(const CylContext& ctx, const AlgebraStructure& F, const OperadElement& e) {
  EndTarget T = F.target();
  MultiMap r = T.zero(e.arity, e.out, e.in);
  for (const auto& [t, c] : e.terms) {
    if (t.bare()) {
      T.axpy(r, c, T.identity(t.output()));
      continue;
    }
    std::vector<const MultiMap*> vals(t.vertices.size());
    bool zero = false;
    for (int u = 0; u < t.num_vertices(); ++u) {
      const Gen g = gen_of(t.vertices[u]);
      if (F.flavor == Flavor::Cobar && g.kind != Kind::Alpha) throw InvalidInput("Cobar structure on a colored tree");
      auto it = F.values.find(g);
      if (it == F.values.end()) {
        zero = true;
        break;
      }
      vals[u] = &it->second;
    }
    if (!zero) T.axpy(r, c, T.compose_tree(t, vals));
  }
  (void)ctx;
  return r;
}

Report validate_structure(const CylContext& ctx, const AlgebraStructure& F) {
  Report rep;
  rep.merge(validate_space(F.V));
  if (F.flavor == Flavor::Cyl) rep.merge(validate_space(F.W));
  if (!rep.ok) return rep;
  EndTarget T = F.target();
  const auto gens = structure_gens(ctx, F.flavor);
  for (const auto& [g, v] : F.values) {
    const bool known = std::find(gens.begin(), gens.end(), g) != gens.end();
    rep.check(known, "value on an unknown generator of arity " + std::to_string(g.arity));
    if (!known) continue;
    MultiMap z = T.zero(g.arity, output_color(g.kind), input_profile(g.kind, g.arity));
    rep.check(v.in == z.in && v.out == z.out && v.data.size() == z.data.size(),
              "value on " + gen_text(ctx, g) + " has the wrong profile");
    for (const auto& [d, p] : T.homogeneous_parts(v))
      rep.check(d == ctx.gen_degree(g), "value on " + gen_text(ctx, g) + " has a component of degree " +
                                            std::to_string(d) + " (expected " +
                                            std::to_string(ctx.gen_degree(g)) + ")");
  }
  if (!rep.ok) return rep;
  // Chain condition.
  for (const Gen& g : gens) {
    MultiMap lhs = g.trivial() ? T.zero(1, Color::Beta, {Color::Alpha}) : evaluate(ctx, F, ctx.gen_diff(g));
    MultiMap rhs = T.zero(g.arity, output_color(g.kind), input_profile(g.kind, g.arity));
    if (auto it = F.values.find(g); it != F.values.end()) rhs = T.diff(it->second);
    rep.check(lhs == rhs, "chain condition fails at arity " + std::to_string(g.arity) + " on generator " +
                              gen_text(ctx, g));
  }
  // Maurer-Cartan cross-check and equivariance in the convolution algebra.
  if (F.flavor == Flavor::Cobar) {
    LieConvolution<EndTarget> L(ctx.cooperad(), T);
    ConvElement<EndTarget> a;
    a.degree = 1;
    a.values = F.values;
    rep.check(L.is_equivariant(a), "structure is not equivariant");
    const bool mc = L.is_zero(L.mc_curvature(a));
    rep.check(mc == rep.ok, "Maurer-Cartan cross-check disagrees with the chain condition");
  } else {
    ColoredConvolution<EndTarget> L(ctx, T);
    ConvElement<EndTarget> a;
    a.degree = 0;
    a.values = F.values;
    rep.check(L.is_equivariant(a), "structure is not equivariant");
    const bool mc = L.mc_check(a).ok;
    rep.check(mc == rep.ok, "Maurer-Cartan cross-check disagrees with the chain condition");
  }
  return rep;
}

AlgebraStructure assemble_cyl_algebra(const CylContext& ctx, const Triple& t) {
  if (t.FV.flavor != Flavor::Cobar || t.FW.flavor != Flavor::Cobar)
    throw InvalidInput("triples consist of two Cobar(C)-algebras and an infinity-morphism");
  AlgebraStructure F;
  F.flavor = Flavor::Cyl;
  F.V = t.FV.V;
  F.W = t.FW.V;
  for (const auto& [g, v] : t.FV.values) F.values.emplace(g, v);
  for (const auto& [g, v] : t.FW.values) {
    MultiMap w = v;
    w.out = Color::Beta;
    w.in.assign(w.in.size(), Color::Beta);
    F.values.emplace(Gen{Kind::Beta, g.arity, g.idx}, std::move(w));
  }
  for (const auto& [g, v] : t.U.components) {
    if (g.kind != Kind::Mixed) throw InvalidInput("infinity-morphism components live on mixed generators");
    if (g.arity > ctx.cap()) throw InvalidInput("infinity-morphism component above the cap");
    F.values.emplace(g, v);
  }
  return F;
}

Triple split_cyl_algebra(const AlgebraStructure& F) {
  if (F.flavor != Flavor::Cyl) throw InvalidInput("only Cyl(C)-algebras split into triples");
  Triple t;
  t.FV.flavor = t.FW.flavor = Flavor::Cobar;
  t.FV.V = t.FV.W = F.V;
  t.FW.V = t.FW.W = F.W;
  for (const auto& [g, v] : F.values) {
    if (g.kind == Kind::Alpha) {
      t.FV.values.emplace(g, v);
    } else if (g.kind == Kind::Beta) {
      MultiMap w = v;
      w.out = Color::Alpha;
      w.in.assign(w.in.size(), Color::Alpha);
      t.FW.values.emplace(Gen{Kind::Alpha, g.arity, g.idx}, std::move(w));
    } else {
      t.U.components.emplace(g, v);
    }
  }
  return t;
}

AlgebraStructure twist_structure(const CylContext& ctx, const AlgebraStructure& F, const Morphism& phi) {
  if (phi.flavor != F.flavor) throw InvalidInput("morphism and structure flavors differ");
  Report r = check_chain_morphism(ctx, phi);
  if (!r.ok) throw InvalidInput("twisting needs a chain morphism: " + r.failures.front());
  AlgebraStructure out = F;
  out.values.clear();
  for (const Gen& g : structure_gens(ctx, F.flavor)) {
    if (g.trivial()) {
      if (auto it = F.values.find(g); it != F.values.end()) out.values.emplace(g, it->second);
      continue;
    }
    MultiMap v = evaluate(ctx, F, morphism_value(ctx, phi, g));
    if (!v.is_zero()) out.values.emplace(g, std::move(v));
  }
  return out;
}

Morphism restrict_alpha(const CylContext&, const Morphism& phi) {
  Morphism m = identity_morphism(Flavor::Cobar);
  for (const auto& [g, v] : phi.values)
    if (g.kind == Kind::Alpha) m.values.emplace(g, v);
  return m;
}

Morphism restrict_beta(const CylContext& ctx, const Morphism& phi) {
  Morphism m = identity_morphism(Flavor::Cobar);
  for (const auto& [g, v] : phi.values)
    if (g.kind == Kind::Beta) m.values.emplace(Gen{Kind::Alpha, g.arity, g.idx}, ctx.to_alpha(v));
  return m;
}

Report check_aut_prime(const CylContext& ctx, const Morphism& phi) {
  Report r;
  for (const Gen& g : ctx.generators(phi.flavor)) {
    OperadElement v = morphism_value(ctx, phi, g);
    OperadElement w0 = ctx.free().weight_part(v, 1);
    r.check(w0 == ctx.gen_element(g), "weight-0 part is not the identity on " + gen_text(ctx, g));
  }
  return r;
}

bool TransportCertificate::green() const {
  for (const auto& c : checks)
    if (!c.report.ok) return false;
  return !checks.empty();
}

Triple transport_with_lift(const CylContext& ctx, const Triple& input, const Derivation& lifted) {
  Morphism phi = exp_derivation(ctx, lifted);
  return split_cyl_algebra(twist_structure(ctx, assemble_cyl_algebra(ctx, input), phi));
}

TransportCertificate transport_pipeline(const CylContext& ctx, const Triple& input, const Derivation& D) {
  TransportCertificate cert;
  AlgebraStructure F = assemble_cyl_algebra(ctx, input);
  Report in_rep = validate_structure(ctx, F);
  if (!in_rep.ok) throw InvalidInput("input triple is not a Cyl(C)-algebra: " + in_rep.failures.front());
  cert.checks.push_back({"input triple valid", in_rep});
  cert.lift = lift_derivation(ctx, D);
  cert.checks.push_back({"lift: closed Der' with cohomologous witnesses", check_lift(ctx, D, cert.lift)});
  Morphism phi = exp_derivation(ctx, cert.lift.lifted);
  cert.checks.push_back({"exp(D~) is a chain morphism", check_chain_morphism(ctx, phi)});
  cert.checks.push_back({"exp(D~) in Aut'", check_aut_prime(ctx, phi)});
  AlgebraStructure G = twist_structure(ctx, F, phi);
  cert.checks.push_back({"output Cyl(C)-algebra valid", validate_structure(ctx, G)});
  cert.output = split_cyl_algebra(G);
  Report coh;
  AlgebraStructure va = twist_structure(ctx, input.FV, restrict_alpha(ctx, phi));
  AlgebraStructure wb = twist_structure(ctx, input.FW, restrict_beta(ctx, phi));
  coh.check(va.values == cert.output.FV.values, "alpha part differs from the twist by exp(D~)_alpha");
  coh.check(wb.values == cert.output.FW.values, "beta part differs from the twist by exp(D~)_beta");
  cert.checks.push_back({"single-color parts equal the exp(D~)_alpha/beta twists", coh});
  Report wit;
  wit.check(res_alpha(ctx, cert.lift.lifted) - D == der_diff(ctx, cert.lift.t_alpha),
            "res_alpha(D~) - D != [d, T_alpha]");
  wit.check(res_beta(ctx, cert.lift.lifted) - D == der_diff(ctx, cert.lift.t_beta),
            "res_beta(D~) - D != [d, T_beta]");
  cert.checks.push_back({"cohomologous witnesses exact", wit});
  return cert;
}

Report iteration_law_check(const CylContext& ctx, const Triple& input, const Derivation& a, const Derivation& b) {
  Report r;
  Triple twice = transport_with_lift(ctx, transport_with_lift(ctx, input, a), b);
  Triple once = transport_with_lift(ctx, input, ch_compose(ctx, a, b));
  r.check(twice.FV.values == once.FV.values, "alpha parts differ");
  r.check(twice.FW.values == once.FW.values, "beta parts differ");
  r.check(twice.U.components == once.U.components, "infinity-morphisms differ");
  return r;
}

std::vector<std::map<Gen, MultiMap>> equivariant_assignments(const CylContext& ctx, const EndTarget& T,
                                                             const std::vector<Gen>& gens) {
  // Reynolds averages of elementary assignments, reduced to a basis.
  const Cooperad& C = ctx.cooperad();
  std::vector<std::map<Gen, MultiMap>> out;
  std::map<Gen, std::size_t> offset;
  std::size_t total = 0;
  for (const Gen& g : gens) {
    offset[g] = total;
    total += T.zero(g.arity, output_color(g.kind), input_profile(g.kind, g.arity)).data.size();
  }
  Echelon E;
  for (const Gen& g : gens) {
    const auto basis =
        T.component_basis(g.arity, output_color(g.kind), input_profile(g.kind, g.arity), ctx.gen_degree(g));
    for (const MultiMap& e : basis) {
      std::map<Gen, MultiMap> avg;
      if (g.arity == 1) {
        avg.emplace(g, e);
      } else {
        const auto perms = all_perms(g.arity);
        const Scalar w(1, static_cast<long>(perms.size()));
        // f(y) = sum_p relabel(f0(act(p) y), p) / n! where f0 is e on g.
        for (int h = 0; h < C.dim(g.arity); ++h) {
          const Gen gh{g.kind, g.arity, h};
          MultiMap acc = T.zero(g.arity, output_color(g.kind), input_profile(g.kind, g.arity));
          for (const auto& p : perms) {
            const SparseVector a = C.act(p, h);
            auto it = a.find(g.idx);
            if (it == a.end()) continue;
            T.axpy(acc, w * it->second, T.relabel(e, p));
          }
          if (!acc.is_zero()) avg.emplace(gh, std::move(acc));
        }
      }
      SparseVector flat;
      for (const auto& [h, m] : avg)
        for (std::size_t k = 0; k < m.data.size(); ++k)
          if (m.data[k] != 0) flat[static_cast<int>(offset[h] + k)] = m.data[k];
      if (!flat.empty() && E.insert(flat)) out.push_back(std::move(avg));
    }
  }
  return out;
}

namespace {

// Enumerates coefficient vectors in {-1, 0, 1}^k.
void enumerate_ternary(std::size_t k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> c(k, -1);
  while (true) {
    visit(c);
    std::size_t i = 0;
    while (i < k && c[i] == 1) c[i++] = -1;
    if (i == k) break;
    ++c[i];
  }
}

std::map<Gen, MultiMap> combine(const EndTarget& T, const std::vector<std::map<Gen, MultiMap>>& basis,
                                const std::vector<int>& coeffs) {
  std::map<Gen, MultiMap> v;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (const auto& [g, m] : basis[i]) {
      auto it = v.find(g);
      if (it == v.end()) it = v.emplace(g, T.zero(m.arity, m.out, m.in)).first;
      T.axpy(it->second, coeffs[i], m);
    }
  }
  for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
  return v;
}

bool chain_ok(const CylContext& ctx, const AlgebraStructure& F, const std::vector<Gen>& gens) {
  EndTarget T = F.target();
  for (const Gen& g : gens) {
    if (g.trivial()) continue;
    MultiMap lhs = evaluate(ctx, F, ctx.gen_diff(g));
    MultiMap rhs = T.zero(g.arity, output_color(g.kind), input_profile(g.kind, g.arity));
    if (auto it = F.values.find(g); it != F.values.end()) rhs = T.diff(it->second);
    if (!(lhs == rhs)) return false;
  }
  // The trivial generator needs a chain map V -> W.
  if (auto it = F.values.find(Gen{Kind::Mixed, 1, 0}); it != F.values.end())
    if (!T.diff(it->second).is_zero()) return false;
  return true;
}

}  // namespace

std::vector<AlgebraStructure> brute_force_structures(const CylContext& ctx, const GradedSpace& V,
                                                     std::size_t max_params) {
  AlgebraStructure F = zero_structure(ctx, Flavor::Cobar, V, V);
  EndTarget T = F.target();
  const auto gens = cobar_gens(ctx);
  const auto basis = equivariant_assignments(ctx, T, gens);
  if (basis.size() > max_params)
    throw InvalidInput("brute-force search space too large: " + std::to_string(basis.size()) + " parameters");
  std::vector<AlgebraStructure> found;
  enumerate_ternary(basis.size(), [&](const std::vector<int>& c) {
    F.values = combine(T, basis, c);
    if (chain_ok(ctx, F, gens)) found.push_back(F);
  });
  return found;
}

std::vector<InfinityMorphism> brute_force_morphisms(const CylContext& ctx, const AlgebraStructure& FV,
                                                    const AlgebraStructure& FW, std::size_t max_params) {
  Triple t{FV, FW, {}};
  AlgebraStructure F = assemble_cyl_algebra(ctx, t);
  EndTarget T = F.target();
  std::vector<Gen> mixed;
  for (const Gen& g : cyl_gens(ctx))
    if (g.kind == Kind::Mixed) mixed.push_back(g);
  const auto basis = equivariant_assignments(ctx, T, mixed);
  if (basis.size() > max_params)
    throw InvalidInput("brute-force search space too large: " + std::to_string(basis.size()) + " parameters");
  std::vector<InfinityMorphism> found;
  const std::map<Gen, MultiMap> single = F.values;
  enumerate_ternary(basis.size(), [&](const std::vector<int>& c) {
    auto u = combine(T, basis, c);
    F.values = single;
    for (const auto& [g, m] : u) F.values.emplace(g, m);
    if (chain_ok(ctx, F, mixed)) found.push_back(InfinityMorphism{u});
  });
  return found;
}

namespace {

SparseVector flatten(const std::map<Gen, MultiMap>& defects) {
  SparseVector v;
  int off = 0;
  for (const auto& [g, m] : defects) {
    for (std::size_t k = 0; k < m.data.size(); ++k)
      if (m.data[k] != 0) v[off + static_cast<int>(k)] = m.data[k];
    off += static_cast<int>(m.data.size());
  }
  return v;
}

// Chain defects F(d g) - d F(g) on the given generators, all listed.
std::map<Gen, MultiMap> defects(const CylContext& ctx, const AlgebraStructure& F, const std::vector<Gen>& gens) {
  EndTarget T = F.target();
  std::map<Gen, MultiMap> out;
  for (const Gen& g : gens) {
    MultiMap lhs = evaluate(ctx, F, ctx.gen_diff(g));
    if (auto it = F.values.find(g); it != F.values.end()) T.axpy(lhs, -1, T.diff(it->second));
    out.emplace(g, std::move(lhs));
  }
  return out;
}

void add_assignment(const EndTarget& T, std::map<Gen, MultiMap>& values, const std::map<Gen, MultiMap>& a,
                    const Scalar& c) {
  for (const auto& [g, m] : a) {
    auto it = values.find(g);
    if (it == values.end()) it = values.emplace(g, T.zero(m.arity, m.out, m.in)).first;
    T.axpy(it->second, c, m);
  }
  for (auto it = values.begin(); it != values.end();) it = it->second.is_zero() ? values.erase(it) : std::next(it);
}

// Extends F arity by arity over `gens` (arity >= 3 for the unknowns);
// false when some arity has no solution.
bool solve_upper(const CylContext& ctx, AlgebraStructure& F, const std::vector<Gen>& gens) {
  EndTarget T = F.target();
  for (int n = 3; n <= ctx.cap(); ++n) {
    std::vector<Gen> level;
    for (const Gen& g : gens)
      if (g.arity == n) level.push_back(g);
    if (level.empty()) continue;
    const auto basis = equivariant_assignments(ctx, T, level);
    const SparseVector r0 = flatten(defects(ctx, F, level));
    if (basis.empty()) {
      if (!r0.empty()) return false;
      continue;
    }
    std::size_t rows = 0;
    for (const auto& [g, m] : defects(ctx, F, level)) rows += m.data.size();
    LinearMapRep A(GradedBasis::anonymous(basis.size()), GradedBasis::anonymous(rows), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      AlgebraStructure probe = F;
      add_assignment(T, probe.values, basis[i], 1);
      SparseVector col = flatten(defects(ctx, probe, level));
      axpy(col, -1, r0);
      A.columns[i] = col;
    }
    SparseVector rhs;
    axpy(rhs, -1, r0);
    auto sol = solve_affine(A, rhs);
    if (!sol) return false;
    for (const auto& [i, c] : *sol) add_assignment(T, F.values, basis[static_cast<std::size_t>(i)], c);
  }
  return chain_ok(ctx, F, gens);
}

}  // namespace

std::vector<AlgebraStructure> staged_structures(const CylContext& ctx, const GradedSpace& V, std::size_t max_params) {
  AlgebraStructure F = zero_structure(ctx, Flavor::Cobar, V, V);
  EndTarget T = F.target();
  const auto gens = cobar_gens(ctx);
  std::vector<Gen> low;
  for (const Gen& g : gens)
    if (g.arity == 2) low.push_back(g);
  const auto basis = equivariant_assignments(ctx, T, low);
  if (basis.size() > max_params)
    throw InvalidInput("staged search space too large: " + std::to_string(basis.size()) + " parameters");
  std::vector<AlgebraStructure> found;
  enumerate_ternary(basis.size(), [&](const std::vector<int>& c) {
    F.values = combine(T, basis, c);
    if (!chain_ok(ctx, F, low)) return;
    AlgebraStructure G = F;
    if (solve_upper(ctx, G, gens)) found.push_back(std::move(G));
  });
  return found;
}

std::vector<InfinityMorphism> staged_morphisms(const CylContext& ctx, const AlgebraStructure& FV,
                                               const AlgebraStructure& FW, std::size_t max_params) {
  Triple t{FV, FW, {}};
  AlgebraStructure F = assemble_cyl_algebra(ctx, t);
  EndTarget T = F.target();
  std::vector<Gen> mixed, low;
  for (const Gen& g : cyl_gens(ctx))
    if (g.kind == Kind::Mixed) {
      mixed.push_back(g);
      if (g.arity <= 2) low.push_back(g);
    }
  const auto basis = equivariant_assignments(ctx, T, low);
  if (basis.size() > max_params)
    throw InvalidInput("staged search space too large: " + std::to_string(basis.size()) + " parameters");
  std::vector<InfinityMorphism> found;
  const std::map<Gen, MultiMap> single = F.values;
  enumerate_ternary(basis.size(), [&](const std::vector<int>& c) {
    AlgebraStructure G = F;
    G.values = single;
    for (const auto& [g, m] : combine(T, basis, c)) G.values.emplace(g, m);
    if (!chain_ok(ctx, G, low)) return;
    if (!solve_upper(ctx, G, mixed)) return;
    InfinityMorphism U;
    for (const auto& [g, m] : G.values)
      if (g.kind == Kind::Mixed) U.components.emplace(g, m);
    found.push_back(std::move(U));
  });
  return found;
}

}  // namespace cylop
