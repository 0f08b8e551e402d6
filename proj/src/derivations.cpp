#include "cylop/derivations.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>

namespace cylop {

namespace {

void check_flavor(const Derivation& D, const OperadElement& e) {
  if (D.flavor != Flavor::Cobar) return;
  bool beta = e.out == Color::Beta;
  for (Color c : e.in) beta = beta || c == Color::Beta;
  if (beta) throw InvalidInput("Cobar derivation applied to a 2-colored element");
}

std::vector<Gen> gens_of(const CylContext& ctx, Flavor f) { return ctx.generators(f); }

}  // namespace

const OperadElement* Derivation::value(const Gen& g) const {
  auto it = values.find(g);
  return it == values.end() ? nullptr : &it->second;
}

bool Derivation::is_zero() const {
  for (const auto& kv : values)
    if (!kv.second.is_zero()) return false;
  return true;
}

void Derivation::prune() {
  for (auto it = values.begin(); it != values.end();)
    it = it->second.is_zero() ? values.erase(it) : std::next(it);
}

Derivation& Derivation::operator+=(const Derivation& o) {
  if (flavor != o.flavor || degree != o.degree) throw InvalidInput("derivations of different flavor or degree");
  for (const auto& [g, v] : o.values) {
    auto it = values.find(g);
    if (it == values.end())
      values.emplace(g, v);
    else
      it->second += v;
  }
  prune();
  return *this;
}

Derivation& Derivation::operator-=(const Derivation& o) { return *this += Scalar(-1) * o; }

Derivation& Derivation::operator*=(const Scalar& s) {
  for (auto& kv : values) kv.second *= s;
  prune();
  return *this;
}

bool operator==(const Derivation& a, const Derivation& b) {
  Derivation x = a, y = b;
  x.prune();
  y.prune();
  if (x.is_zero() && y.is_zero()) return x.flavor == y.flavor;
  return x.flavor == y.flavor && x.degree == y.degree && x.values == y.values;
}

Derivation zero_derivation(Flavor f, int degree) {
  Derivation D;
  D.flavor = f;
  D.degree = degree;
  return D;
}

int weight_floor(const Derivation& D) {
  int w = 1 << 20;
  for (const auto& [g, v] : D.values)
    for (const auto& kv : v.terms) w = std::min(w, kv.first.weight() - 1);
  return w;
}

bool in_der_prime(const Derivation& D) { return weight_floor(D) >= 1; }

OperadElement der_extend(const CylContext& ctx, const Derivation& D, const OperadElement& e) {
  check_flavor(D, e);
  return ctx.extend([&](const Gen& g) -> const OperadElement* { return g.trivial() ? nullptr : D.value(g); },
                    D.degree, e);
}

namespace {

// [d, D](g) on a single generator.
OperadElement der_diff_on(const CylContext& ctx, const Derivation& D, const Gen& g) {
  OperadElement r = ctx.zero_like(g);
  if (const auto* v = D.value(g)) r += ctx.diff(*v);
  OperadElement back = der_extend(ctx, D, ctx.gen_diff(g));
  if (D.degree & 1)
    r += back;
  else
    r -= back;
  return r;
}

OperadElement bracket_on(const CylContext& ctx, const Derivation& a, const Derivation& b, const Gen& g) {
  OperadElement r = ctx.zero_like(g);
  if (const auto* v = b.value(g)) r += der_extend(ctx, a, *v);
  if (const auto* v = a.value(g)) {
    OperadElement t = der_extend(ctx, b, *v);
    if ((a.degree & 1) && (b.degree & 1))
      r += t;
    else
      r -= t;
  }
  return r;
}

}  // namespace

Derivation der_bracket(const CylContext& ctx, const Derivation& a, const Derivation& b) {
  if (a.flavor != b.flavor) throw InvalidInput("bracket of derivations of different flavors");
  Derivation r = zero_derivation(a.flavor, a.degree + b.degree);
  for (const Gen& g : gens_of(ctx, a.flavor)) {
    OperadElement v = bracket_on(ctx, a, b, g);
    if (!v.is_zero()) r.values.emplace(g, std::move(v));
  }
  return r;
}

Derivation der_diff(const CylContext& ctx, const Derivation& D) {
  Derivation r = zero_derivation(D.flavor, D.degree + 1);
  for (const Gen& g : gens_of(ctx, D.flavor)) {
    OperadElement v = der_diff_on(ctx, D, g);
    if (!v.is_zero()) r.values.emplace(g, std::move(v));
  }
  return r;
}

Derivation differential_derivation(const CylContext& ctx, Flavor f) {
  Derivation r = zero_derivation(f, 1);
  for (const Gen& g : gens_of(ctx, f))
    if (!ctx.gen_diff(g).is_zero()) r.values.emplace(g, ctx.gen_diff(g));
  return r;
}

namespace {

// D(act(t) x) - relabel(D(x), t) for an adjacent transposition t.
OperadElement equivariance_defect(const CylContext& ctx, const Derivation& D, const Gen& g, const Perm& t) {
  const Cooperad& C = ctx.cooperad();
  OperadElement r = ctx.zero_like(g);
  for (const auto& [h, c] : C.act(t, g.idx))
    if (const auto* v = D.value(Gen{g.kind, g.arity, h})) r += c * (*v);
  if (const auto* v = D.value(g)) r -= ctx.free().relabel(*v, inverse(t));
  return r;
}

}  // namespace

Report check_equivariance(const CylContext& ctx, const Derivation& D) {
  Report rep;
  for (const Gen& g : gens_of(ctx, D.flavor))
    for (int i = 0; i + 1 < g.arity; ++i) {
      OperadElement d = equivariance_defect(ctx, D, g, adjacent_transposition(g.arity, i));
      rep.check(d.is_zero(), "derivation is not equivariant on " + ctx.cooperad().label(g.arity, g.idx));
    }
  return rep;
}

Derivation res_alpha(const CylContext& ctx, const Derivation& D) {
  if (D.flavor != Flavor::Cyl) throw InvalidInput("res_alpha needs a Cyl derivation");
  Derivation r = zero_derivation(Flavor::Cobar, D.degree);
  for (const auto& [g, v] : D.values)
    if (g.kind == Kind::Alpha && !v.is_zero()) r.values.emplace(g, v);
  (void)ctx;
  return r;
}

Derivation res_beta(const CylContext& ctx, const Derivation& D) {
  if (D.flavor != Flavor::Cyl) throw InvalidInput("res_beta needs a Cyl derivation");
  Derivation r = zero_derivation(Flavor::Cobar, D.degree);
  for (const auto& [g, v] : D.values)
    if (g.kind == Kind::Beta && !v.is_zero()) r.values.emplace(Gen{Kind::Alpha, g.arity, g.idx}, ctx.to_alpha(v));
  return r;
}

Derivation pi_transfer(const CylContext& ctx, const Derivation& D) {
  if (D.flavor != Flavor::Cyl) throw InvalidInput("pi_transfer needs a Cyl derivation");
  if (!der_diff(ctx, D).is_zero()) throw InvalidInput("pi_transfer needs a closed derivation");
  Derivation T = zero_derivation(Flavor::Cobar, D.degree - 1);
  for (const Gen& g : gens_of(ctx, Flavor::Cobar)) {
    const auto* v = D.value(Gen{Kind::Mixed, g.arity, g.idx});
    if (!v) continue;
    OperadElement t = ctx.projection_pi(*v);
    if (D.degree & 1) t *= Scalar(-1);
    if (!t.is_zero()) T.values.emplace(g, std::move(t));
  }
  if (!(res_alpha(ctx, D) - res_beta(ctx, D) == der_diff(ctx, T)))
    throw std::logic_error("transfer identity res_alpha - res_beta = [d, T] fails");
  return T;
}

Morphism identity_morphism(Flavor f) {
  Morphism M;
  M.flavor = f;
  return M;
}

OperadElement apply_morphism(const CylContext& ctx, const Morphism& M, const OperadElement& e) {
  OperadElement r = OperadElement::zero(e.arity, e.out, e.in);
  for (const auto& [t, c] : e.terms) {
    std::vector<const OperadElement*> vals(t.vertices.size(), nullptr);
    for (int u = 0; u < t.num_vertices(); ++u) {
      if (t.vertices[u].trivial()) continue;
      auto it = M.values.find(gen_of(t.vertices[u]));
      if (it != M.values.end()) vals[u] = &it->second;
    }
    OperadElement p = ctx.free().substitute_all(t, vals);
    for (const auto& [tt, cc] : p.terms) add_term(r.terms, tt, c * cc);
  }
  return r;
}

Morphism compose_morphisms(const CylContext& ctx, const Morphism& a, const Morphism& b) {
  if (a.flavor != b.flavor) throw InvalidInput("composition of morphisms of different flavors");
  Morphism r = identity_morphism(a.flavor);
  for (const Gen& g : gens_of(ctx, a.flavor)) {
    auto it = b.values.find(g);
    OperadElement bg = it == b.values.end() ? ctx.gen_element(g) : it->second;
    r.values.emplace(g, apply_morphism(ctx, a, bg));
  }
  return r;
}

bool morphisms_equal(const CylContext& ctx, const Morphism& a, const Morphism& b) {
  if (a.flavor != b.flavor) return false;
  for (const Gen& g : gens_of(ctx, a.flavor)) {
    auto ia = a.values.find(g), ib = b.values.find(g);
    OperadElement va = ia == a.values.end() ? ctx.gen_element(g) : ia->second;
    OperadElement vb = ib == b.values.end() ? ctx.gen_element(g) : ib->second;
    if (!(va == vb)) return false;
  }
  return true;
}

Report check_chain_morphism(const CylContext& ctx, const Morphism& M) {
  Report rep;
  for (const Gen& g : gens_of(ctx, M.flavor)) {
    auto it = M.values.find(g);
    OperadElement mg = it == M.values.end() ? ctx.gen_element(g) : it->second;
    rep.check(apply_morphism(ctx, M, ctx.gen_diff(g)) == ctx.diff(mg),
              "morphism does not commute with the differential on " + ctx.cooperad().label(g.arity, g.idx));
  }
  return rep;
}

Morphism exp_derivation(const CylContext& ctx, const Derivation& D, bool require_closed) {
  if (D.degree != 0 && !D.is_zero()) throw InvalidInput("exp needs a degree-0 derivation");
  if (!D.is_zero() && !in_der_prime(D)) throw InvalidInput("exp needs a derivation raising weight");
  if (require_closed && !der_diff(ctx, D).is_zero()) throw InvalidInput("exp needs a closed derivation");
  Morphism M = identity_morphism(D.flavor);
  for (const Gen& g : gens_of(ctx, D.flavor)) {
    OperadElement term = ctx.gen_element(g);
    OperadElement sum = term;
    for (int m = 1;; ++m) {
      if (m > 64) throw std::logic_error("exp series does not terminate");
      term = der_extend(ctx, D, term);
      if (term.is_zero()) break;
      term *= Scalar(1, m);
      sum += term;
    }
    M.values.emplace(g, std::move(sum));
  }
  return M;
}

std::map<std::vector<int>, Scalar> ch_series(int N) {
  using Poly = std::map<std::vector<int>, Scalar>;
  auto mul = [&](const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [wa, ca] : a)
      for (const auto& [wb, cb] : b) {
        if (static_cast<int>(wa.size() + wb.size()) > N) continue;
        std::vector<int> w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        r[w] += ca * cb;
      }
    for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
  };
  auto expo = [&](int letter) {
    Poly r;
    std::vector<int> w;
    Scalar f = 1;
    for (int k = 0; k <= N; ++k) {
      r[w] = 1 / f;
      w.push_back(letter);
      f *= k + 1;
    }
    return r;
  };
  Poly z = mul(expo(0), expo(1));
  z.erase(std::vector<int>{});
  Poly log, power = z;
  for (int k = 1; k <= N; ++k) {
    Scalar c = Scalar((k & 1) ? 1 : -1, k);
    for (const auto& [w, a] : power) log[w] += c * a;
    power = mul(power, z);
  }
  Poly dynkin;
  for (const auto& [w, a] : log)
    if (a != 0) dynkin[w] += a / Scalar(static_cast<long>(w.size()));
  for (auto it = dynkin.begin(); it != dynkin.end();) it = it->second == 0 ? dynkin.erase(it) : std::next(it);
  return dynkin;
}

Derivation ch_compose(const CylContext& ctx, const Derivation& a, const Derivation& b) {
  if (a.flavor != b.flavor || a.degree != b.degree) throw InvalidInput("ch_compose needs matching derivations");
  Derivation r = zero_derivation(a.flavor, a.degree);
  std::map<std::vector<int>, Derivation> cache;
  std::function<const Derivation&(const std::vector<int>&)> nested = [&](const std::vector<int>& w) -> const Derivation& {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    Derivation v;
    if (w.size() == 1) {
      v = w[0] == 0 ? a : b;
    } else {
      std::vector<int> head(w.begin(), w.end() - 1);
      v = der_bracket(ctx, nested(head), w.back() == 0 ? a : b);
    }
    return cache.emplace(w, std::move(v)).first->second;
  };
  for (const auto& [w, c] : ch_series(std::max(2, ctx.cap()))) r += c * nested(w);
  return r;
}

namespace {

using EqKey = std::array<int, 5>;
using Residual = std::map<std::pair<EqKey, Tree>, Scalar>;

void add_residual(Residual& r, const EqKey& k, const OperadElement& e, const Scalar& c = 1) {
  for (const auto& [t, v] : e.terms) {
    auto& slot = r[{k, t}];
    slot += c * v;
    if (slot == 0) r.erase({k, t});
  }
}

EqKey key(int type, const Gen& g, int aux = 0) { return {type, static_cast<int>(g.kind), g.arity, g.idx, aux}; }

struct Unknown {
  int family;
  Gen g;
  Tree t;
};

std::vector<Tree> candidate_trees(const CylContext& ctx, const Gen& g, int shift, int min_gain) {
  std::vector<Tree> out;
  for (const auto& t : ctx.target_basis(g))
    if (ctx.free().degree(t) == ctx.gen_degree(g) + shift && t.weight() >= 1 + min_gain) out.push_back(t);
  return out;
}

void add_equivariance(const CylContext& ctx, const Derivation& D, int family, const std::vector<Gen>& gens,
                      Residual& r) {
  for (const Gen& g : gens)
    for (int i = 0; i + 1 < g.arity; ++i)
      add_residual(r, key(10 + family, g, i), equivariance_defect(ctx, D, g, adjacent_transposition(g.arity, i)));
}

// Linear system A x = rhs over the given unknowns. `residual` must be linear
// in the family derivations; the constant part is passed separately.
struct System {
  std::vector<SparseVector> columns;
  SparseVector rhs;
  std::size_t rows = 0;
};

System build_system(const std::vector<Unknown>& unknowns, const std::vector<Derivation>& zero_fams,
                    const std::function<Residual(const std::vector<Derivation>&)>& residual,
                    const Residual& constant, const CylContext& ctx) {
  std::map<std::pair<EqKey, Tree>, int> rows;
  auto row = [&](const std::pair<EqKey, Tree>& k) {
    auto it = rows.find(k);
    if (it != rows.end()) return it->second;
    int id = static_cast<int>(rows.size());
    rows.emplace(k, id);
    return id;
  };
  System s;
  for (const auto& u : unknowns) {
    std::vector<Derivation> fams = zero_fams;
    OperadElement v = ctx.zero_like(u.g);
    v.terms.emplace(u.t, 1);
    fams[u.family].values.emplace(u.g, std::move(v));
    SparseVector col;
    for (const auto& [k, c] : residual(fams)) col[row(k)] = c;
    s.columns.push_back(std::move(col));
  }
  for (const auto& [k, c] : constant) s.rhs[row(k)] = -c;
  s.rows = rows.size();
  return s;
}

LinearMapRep as_map(const System& s) {
  LinearMapRep m(GradedBasis::anonymous(s.columns.size()), GradedBasis::anonymous(s.rows), 0);
  m.columns = s.columns;
  return m;
}

void assign(std::vector<Derivation>& fams, const std::vector<Unknown>& unknowns, const SparseVector& x,
            const CylContext& ctx) {
  for (const auto& [j, c] : x) {
    const Unknown& u = unknowns[j];
    auto it = fams[u.family].values.find(u.g);
    if (it == fams[u.family].values.end()) it = fams[u.family].values.emplace(u.g, ctx.zero_like(u.g)).first;
    it->second.add(u.t, c);
  }
  for (auto& f : fams) f.prune();
}

}  // namespace

std::vector<Derivation> derivation_space(const CylContext& ctx, Flavor f, int degree, int min_gain, bool closed,
                                         int max_arity) {
  const auto gens = ctx.generators(f, max_arity);
  std::vector<Unknown> unknowns;
  for (const Gen& g : gens)
    for (const auto& t : candidate_trees(ctx, g, degree, min_gain)) unknowns.push_back({0, g, t});
  std::vector<Derivation> zero{zero_derivation(f, degree)};
  auto residual = [&](const std::vector<Derivation>& fams) {
    Residual r;
    if (closed)
      for (const Gen& g : gens) add_residual(r, key(0, g), der_diff_on(ctx, fams[0], g));
    add_equivariance(ctx, fams[0], 0, gens, r);
    return r;
  };
  System s = build_system(unknowns, zero, residual, {}, ctx);
  std::vector<Derivation> out;
  for (const auto& v : kernel_basis(as_map(s))) {
    std::vector<Derivation> fams = zero;
    assign(fams, unknowns, v, ctx);
    out.push_back(fams[0]);
  }
  return out;
}

Derivation random_combination(const std::vector<Derivation>& basis, std::mt19937_64& rng, Flavor f, int degree,
                              int spread) {
  std::uniform_int_distribution<int> dist(-spread, spread);
  Derivation r = zero_derivation(f, degree);
  for (const auto& b : basis) {
    int c = dist(rng);
    if (c != 0) r += Scalar(c) * b;
  }
  return r;
}

namespace {

// Equations of the lift restricted to generators with arity in [lo, hi].
Residual lift_residual(const CylContext& ctx, const std::vector<Derivation>& fams, const Derivation& D, int lo,
                       int hi) {
  Residual r;
  auto in_range = [&](const Gen& g) { return g.arity >= lo && g.arity <= hi; };
  std::vector<Gen> cyl, cob;
  for (const Gen& g : ctx.generators(Flavor::Cyl))
    if (in_range(g)) cyl.push_back(g);
  for (const Gen& g : ctx.generators(Flavor::Cobar))
    if (in_range(g)) cob.push_back(g);
  const Derivation& Dt = fams[0];
  for (const Gen& g : cyl) add_residual(r, key(0, g), der_diff_on(ctx, Dt, g));
  for (const Gen& g : cob) {
    const Gen gb{Kind::Beta, g.arity, g.idx};
    OperadElement ra = ctx.zero_like(g), rb = ctx.zero_like(g);
    if (const auto* v = Dt.value(g)) ra += *v;
    if (const auto* v = Dt.value(gb)) rb += ctx.to_alpha(*v);
    if (const auto* v = D.value(g)) {
      ra -= *v;
      rb -= *v;
    }
    ra -= der_diff_on(ctx, fams[1], g);
    rb -= der_diff_on(ctx, fams[2], g);
    add_residual(r, key(1, g), ra);
    add_residual(r, key(2, g), rb);
  }
  add_equivariance(ctx, Dt, 0, cyl, r);
  add_equivariance(ctx, fams[1], 1, cob, r);
  add_equivariance(ctx, fams[2], 2, cob, r);
  return r;
}

std::vector<Unknown> lift_unknowns(const CylContext& ctx, int lo, int hi) {
  std::vector<Unknown> out;
  for (const Gen& g : ctx.generators(Flavor::Cyl)) {
    if (g.arity < lo || g.arity > hi) continue;
    for (const auto& t : candidate_trees(ctx, g, 0, 1)) out.push_back({0, g, t});
  }
  for (const Gen& g : ctx.generators(Flavor::Cobar)) {
    if (g.arity < lo || g.arity > hi) continue;
    for (const auto& t : candidate_trees(ctx, g, -1, 1)) {
      out.push_back({1, g, t});
      out.push_back({2, g, t});
    }
  }
  return out;
}

bool solve_stage(const CylContext& ctx, const Derivation& D, std::vector<Derivation>& fams, int lo, int hi) {
  const auto unknowns = lift_unknowns(ctx, lo, hi);
  std::vector<Derivation> zero{zero_derivation(Flavor::Cyl, 0), zero_derivation(Flavor::Cobar, -1),
                               zero_derivation(Flavor::Cobar, -1)};
  auto residual = [&](const std::vector<Derivation>& f) {
    return lift_residual(ctx, f, zero_derivation(Flavor::Cobar, 0), lo, hi);
  };
  const Residual constant = lift_residual(ctx, fams, D, lo, hi);
  if (constant.empty()) return true;
  System s = build_system(unknowns, zero, residual, constant, ctx);
  auto x = solve_affine(as_map(s), s.rhs);
  if (!x) return false;
  assign(fams, unknowns, *x, ctx);
  return true;
}

}  // namespace

LiftResult lift_derivation(const CylContext& ctx, const Derivation& D) {
  if (D.flavor != Flavor::Cobar) throw InvalidInput("lift needs a Cobar derivation");
  if (!D.is_zero()) {
    if (D.degree != 0) throw InvalidInput("lift needs a degree-0 derivation");
    if (!in_der_prime(D)) throw InvalidInput("lift needs a derivation in Der'");
    if (!der_diff(ctx, D).is_zero()) throw InvalidInput("lift needs a closed derivation");
    if (!check_equivariance(ctx, D).ok) throw InvalidInput("lift needs an equivariant derivation");
  }
  LiftResult res;
  std::vector<Derivation> fams{zero_derivation(Flavor::Cyl, 0), zero_derivation(Flavor::Cobar, -1),
                               zero_derivation(Flavor::Cobar, -1)};
  bool staged = true;
  for (int n = 2; n <= ctx.cap(); ++n) {
    if (!solve_stage(ctx, D, fams, n, n)) {
      staged = false;
      res.notes.push_back("arity " + std::to_string(n) + " stage has no solution; solving jointly");
      break;
    }
  }
  if (!staged) {
    res.joint_fallback = true;
    fams = {zero_derivation(Flavor::Cyl, 0), zero_derivation(Flavor::Cobar, -1), zero_derivation(Flavor::Cobar, -1)};
    if (!solve_stage(ctx, D, fams, 2, ctx.cap()))
      throw LiftFailure("lift system has no solution: the input falsifies the lifting theorem at this cap");
  }
  res.lifted = fams[0];
  res.t_alpha = fams[1];
  res.t_beta = fams[2];
  Report check = check_lift(ctx, D, res);
  if (!check.ok) throw LiftFailure("lift postconditions fail: " + check.failures.front());
  return res;
}

Report check_lift(const CylContext& ctx, const Derivation& D, const LiftResult& r) {
  Report rep;
  rep.check(r.lifted.flavor == Flavor::Cyl && (r.lifted.degree == 0 || r.lifted.is_zero()),
            "lift is not a degree-0 Cyl derivation");
  rep.check(der_diff(ctx, r.lifted).is_zero(), "lift is not closed");
  rep.check(r.lifted.is_zero() || in_der_prime(r.lifted), "lift is not in Der'");
  rep.check(r.t_alpha.is_zero() || in_der_prime(r.t_alpha), "T_alpha is not in Der'");
  rep.check(r.t_beta.is_zero() || in_der_prime(r.t_beta), "T_beta is not in Der'");
  rep.check(check_equivariance(ctx, r.lifted).ok, "lift is not equivariant");
  rep.check(res_alpha(ctx, r.lifted) == D + der_diff(ctx, r.t_alpha), "res_alpha differs from D + [d, T_alpha]");
  rep.check(res_beta(ctx, r.lifted) == D + der_diff(ctx, r.t_beta), "res_beta differs from D + [d, T_beta]");
  return rep;
}

std::string str(const Derivation& D, const Cooperad& C) {
  std::string s;
  for (const auto& [g, v] : D.values) {
    s += std::string(1, kind_char(g.kind)) + ":" + C.label(g.arity, g.idx) + " -> " + v.str() + "\n";
  }
  return s.empty() ? "0\n" : s;
}

}  // namespace cylop
