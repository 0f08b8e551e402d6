#include <random>

#include "cylop/transport.hpp"
#include "doctest.h"

using namespace cylop;

namespace {

GradedSpace even_odd(bool with_d) {
  GradedBasis b({{"e", 0}, {"o", 1}});
  LinearMapRep d(b, b, 1);
  if (with_d) d.set(1, 0, 1);
  return GradedSpace(b, d);
}

MultiMap random_map(const EndTarget& T, std::mt19937_64& rng, int arity) {
  MultiMap f = T.zero(arity, Color::Alpha, std::vector<Color>(arity, Color::Alpha));
  for (auto& x : f.data) x = rng() % 3 == 0 ? Scalar(static_cast<long>(rng() % 5) - 2) : Scalar(0);
  return f;
}

std::vector<std::size_t> digits(std::size_t c, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = c % dims[k];
    c /= dims[k];
  }
  return d;
}

std::size_t index(const std::vector<std::size_t>& d, const std::vector<std::size_t>& dims) {
  std::size_t c = 0;
  for (std::size_t k = 0; k < d.size(); ++k) c = c * dims[k] + d[k];
  return c;
}

// f o_i g evaluated tensor by tensor: g acts on inputs i..i+k-1 and passes
// the earlier inputs with the degree of the entry used.
MultiMap naive_compose(const GradedSpace& V, const MultiMap& f, int i, const MultiMap& g) {
  const int n = f.arity, k = g.arity, m = n + k - 1;
  std::vector<std::size_t> dims(m, V.dim()), fd(n, V.dim()), gd(k, V.dim());
  MultiMap r;
  r.arity = m;
  r.in.assign(m, Color::Alpha);
  r.in_dims = dims;
  r.rows = V.dim();
  r.cols = 1;
  for (int a = 0; a < m; ++a) r.cols *= V.dim();
  r.data.assign(r.rows * r.cols, Scalar(0));
  for (std::size_t c = 0; c < r.cols; ++c) {
    auto d = digits(c, dims);
    std::vector<std::size_t> gin(d.begin() + i, d.begin() + i + k);
    int before = 0, gin_deg = 0;
    for (int a = 0; a < i; ++a) before += V.degree(d[a]);
    for (auto x : gin) gin_deg += V.degree(x);
    for (std::size_t s = 0; s < V.dim(); ++s) {
      const Scalar& gv = g.at(s, index(gin, gd));
      if (gv == 0) continue;
      const int entry = V.degree(s) - gin_deg;
      std::vector<std::size_t> fin(d.begin(), d.begin() + i);
      fin.push_back(s);
      fin.insert(fin.end(), d.begin() + i + k, d.end());
      const Scalar sign = ((entry * before) & 1) ? -1 : 1;
      for (std::size_t o = 0; o < V.dim(); ++o) r.at(o, c) += sign * gv * f.at(o, index(fin, fd));
    }
  }
  return r;
}

}  // namespace

TEST_CASE("End composition agrees with tensor-by-tensor evaluation") {
  GradedSpace V = even_odd(true);
  EndTarget T(V, V);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3), k = 1 + static_cast<int>(rng() % 3);
    MultiMap f = random_map(T, rng, n), g = random_map(T, rng, k);
    const int i = static_cast<int>(rng() % n);
    CHECK(T.compose_at(f, i, g).data == naive_compose(V, f, i, g).data);
  }
}

TEST_CASE("End operad laws") {
  GradedSpace V = even_odd(true);
  EndTarget T(V, V);
  std::mt19937_64 rng(9);
  const MultiMap id = T.identity(Color::Alpha);
  for (int trial = 0; trial < 10; ++trial) {
    MultiMap f = random_map(T, rng, 2), g = random_map(T, rng, 2), h = random_map(T, rng, 2);
    CHECK(T.compose_at(f, 1, id) == f);
    CHECK(T.compose_at(id, 0, f) == f);
    // Sequential composition: (f o_0 g) o_2 h = f o_1 h o_0 g with signs from
    // moving h past g; checked on homogeneous parts.
    for (const auto& [dg, gp] : T.homogeneous_parts(g))
      for (const auto& [dh, hp] : T.homogeneous_parts(h)) {
        MultiMap lhs = T.compose_at(T.compose_at(f, 0, gp), 2, hp);
        MultiMap rhs = T.compose_at(T.compose_at(f, 1, hp), 0, gp);
        if ((dg * dh) & 1) T.axpy(rhs, Scalar(-2), rhs);
        CHECK(lhs == rhs);
      }
    CHECK(T.diff(T.diff(f)).is_zero());
    Perm swap{1, 0};
    CHECK(T.relabel(T.relabel(f, swap), swap) == f);
  }
}

TEST_CASE("compose_tree is compatible with canonical forms") {
  Cooperad C = builtin_cocom_eps(3);
  CylContext ctx(C);
  GradedSpace V = even_odd(false), W = even_odd(true);
  EndTarget T(V, W);
  ColoredConvolution<EndTarget> L(ctx, T);
  std::mt19937_64 rng(1);
  int checked = 0;
  for (int trial = 0; trial < 5; ++trial) {
    auto F = L.random_element(rng, 0, 1, 99, 3);
    for (int n = 2; n <= C.cap(); ++n)
      for (const Tree& t0 : ctx.cyl_basis(n)) {
        if (t0.num_vertices() < 2) continue;
        Tree raw = t0;
        for (auto& v : raw.vertices)
          if (v.children.size() > 1 && rng() % 2) std::swap(v.children[0], v.children[1]);
        std::vector<const MultiMap*> vals;
        bool missing = false;
        for (const auto& v : raw.vertices) {
          auto it = F.values.find(gen_of(v));
          if (it == F.values.end()) {
            missing = true;
            break;
          }
          vals.push_back(&it->second);
        }
        if (missing) continue;
        MultiMap direct = T.compose_tree(raw, vals);
        OperadElement ce = ctx.free().element(raw);
        MultiMap via = T.zero(direct.arity, direct.out, direct.in);
        for (const auto& [t, c] : ce.terms) {
          std::vector<const MultiMap*> vv;
          for (const auto& v : t.vertices) vv.push_back(&F.values.at(gen_of(v)));
          T.axpy(via, c, T.compose_tree(t, vv));
        }
        ++checked;
        CHECK(direct == via);
      }
  }
  CHECK(checked > 0);
}

TEST_CASE("brute-force structures are valid and triples round trip") {
  Cooperad C = builtin_cocom(3);
  CylContext ctx(C);
  GradedSpace V = even_odd(false);
  auto sv = brute_force_structures(ctx, V);
  REQUIRE(sv.size() > 1);
  for (const auto& s : sv) CHECK(validate_structure(ctx, s).ok);
  auto us = brute_force_morphisms(ctx, sv.back(), sv.back());
  REQUIRE_FALSE(us.empty());
  Triple t{sv.back(), sv.back(), us.back()};
  AlgebraStructure F = assemble_cyl_algebra(ctx, t);
  CHECK(validate_structure(ctx, F).ok);
  Triple back = split_cyl_algebra(F);
  CHECK(back.FV.values == t.FV.values);
  CHECK(back.FW.values == t.FW.values);
  CHECK(back.U.components == t.U.components);
  CHECK(twist_structure(ctx, F, identity_morphism(Flavor::Cyl)).values == F.values);
}

TEST_CASE("invalid structures are located") {
  Cooperad C = builtin_cocom(3);
  CylContext ctx(C);
  GradedSpace V = even_odd(true);
  AlgebraStructure F = zero_structure(ctx, Flavor::Cobar, V, GradedSpace(GradedBasis{}));
  CHECK(validate_structure(ctx, F).ok);
  // A product of the wrong degree.
  const Gen g{Kind::Alpha, 2, 0};
  MultiMap m = F.target().zero(2, Color::Alpha, {Color::Alpha, Color::Alpha});
  m.at(0, 0) = 1;
  F.values[g] = m;
  Report r = validate_structure(ctx, F);
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.failures.empty());
  CHECK(r.failures.front().find("nu2") != std::string::npos);
}

TEST_CASE("transport along zero is the identity and along D is certified") {
  Cooperad C = builtin_cocom_eps(3);
  CylContext ctx(C);
  GradedSpace V = even_odd(false);
  auto sv = staged_structures(ctx, V);
  REQUIRE(sv.size() > 1);
  const AlgebraStructure& FV = sv[1];
  auto us = staged_morphisms(ctx, FV, FV);
  REQUIRE_FALSE(us.empty());
  Triple t{FV, FV, us.back()};
  TransportCertificate zero = transport_pipeline(ctx, t, zero_derivation(Flavor::Cobar, 0));
  CHECK(zero.green());
  CHECK(zero.output.FV.values == t.FV.values);
  CHECK(zero.output.U.components == t.U.components);
  std::mt19937_64 rng(1);
  auto sp = derivation_space(ctx, Flavor::Cobar, 0, 1, true);
  Derivation D = random_combination(sp, rng, Flavor::Cobar, 0);
  TransportCertificate cert = transport_pipeline(ctx, t, D);
  for (const auto& c : cert.checks) {
    CAPTURE(c.name);
    CHECK(c.report.ok);
  }
  CHECK(validate_structure(ctx, assemble_cyl_algebra(ctx, cert.output)).ok);
}
