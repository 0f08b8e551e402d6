#include <random>

#include "cylop/cylinder.hpp"
#include "doctest.h"

using namespace cylop;

namespace {

OperadElement random_element(const CylContext& ctx, std::mt19937_64& rng, Color out, int n) {
  const auto& basis = out == Color::Alpha ? ctx.cobar_basis(n) : ctx.cyl_basis(n);
  OperadElement e = ctx.free().element(basis[rng() % basis.size()]);
  e *= Scalar(static_cast<long>(rng() % 5) + 1);
  return e;
}

}  // namespace

TEST_CASE("cobar bases of cocom count reduced labelled trees") {
  Cooperad C = builtin_cocom(4);
  CylContext ctx(C);
  CHECK(ctx.cobar_basis(2).size() == 1);
  CHECK(ctx.cobar_basis(3).size() == 4);
  CHECK(ctx.cobar_basis(4).size() == 26);
}

TEST_CASE("cobar differential on two_level") {
  Cooperad C = builtin_two_level();
  CylContext ctx(C);
  const int x = C.find_label(2, "x"), y = C.find_label(2, "y");
  OperadElement sy = ctx.free().corolla(Kind::Alpha, 2, y);
  OperadElement sx = ctx.free().corolla(Kind::Alpha, 2, x);
  CHECK(cobar_diff(ctx, sy) == Scalar(-1) * sx);
  CHECK(cobar_diff(ctx, sx).is_zero());
}

TEST_CASE("cobar differential on the binary cocom generator") {
  Cooperad C = builtin_cocom(3);
  CylContext ctx(C);
  CHECK(cobar_diff(ctx, ctx.free().corolla(Kind::Alpha, 2, 0)).is_zero());
  OperadElement d3 = cobar_diff(ctx, ctx.free().corolla(Kind::Alpha, 3, 0));
  CHECK(d3.terms.size() == 3);
  for (const auto& [t, c] : d3.terms) CHECK(t.num_vertices() == 2);
}

TEST_CASE("differentials are derivations of the composition") {
  std::mt19937_64 rng(5);
  for (const char* name : {"cocom:4", "two_level", "cocom_eps:4"}) {
    CAPTURE(name);
    Cooperad C = builtin_by_name(name);
    CylContext ctx(C);
    const FreeOperad& F = ctx.free();
    for (int trial = 0; trial < 20; ++trial) {
      const int na = 2, nb = 2 + static_cast<int>(rng() % (C.cap() - 1));
      if (na + nb - 1 > C.cap()) continue;
      OperadElement a = random_element(ctx, rng, Color::Alpha, na);
      OperadElement b = random_element(ctx, rng, Color::Alpha, nb);
      const int i = 1 + static_cast<int>(rng() % na);
      const int da = *F.degree(a);
      for (bool w0 : {false, true}) {
        auto d = [&](const OperadElement& e) { return ctx.diff(e, w0); };
        OperadElement lhs = d(F.compose(a, i, b));
        OperadElement rhs = F.compose(d(a), i, b);
        OperadElement t = F.compose(a, i, d(b));
        rhs += (da & 1) ? Scalar(-1) * t : t;
        CHECK(lhs == rhs);
      }
      // Colored: beta element with an alpha input filled.
      OperadElement m = random_element(ctx, rng, Color::Beta, na);
      const int dm = *F.degree(m);
      OperadElement lhs = cyl_diff(ctx, F.compose(m, i, b));
      OperadElement rhs = F.compose(cyl_diff(ctx, m), i, b);
      OperadElement t = F.compose(m, i, cyl_diff(ctx, b));
      rhs += (dm & 1) ? Scalar(-1) * t : t;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("d^2 vanishes on generators and basis elements") {
  for (const char* name : {"cocom:4", "coass:3", "two_level", "binary_trivial", "cocom_eps:4"}) {
    CAPTURE(name);
    Cooperad C = builtin_by_name(name);
    CylContext ctx(C);
    for (int n = 2; n <= C.cap(); ++n) {
      CHECK(d_squared_check(ctx, n).ok);
      CHECK(d_squared_basis_check(ctx, n).ok);
    }
  }
}

TEST_CASE("cylinder generators and the trivial vertex") {
  Cooperad C = builtin_cocom(3);
  CylContext ctx(C);
  auto gens = ctx.generators(Flavor::Cyl);
  for (const Gen& g : gens) CHECK_FALSE(g.trivial());
  CHECK(gens.size() == 6);
  CHECK(ctx.generators(Flavor::Cobar).size() == 2);
  // The binary mixed generator has a differential containing trivial vertices.
  const OperadElement& d = ctx.gen_diff(Gen{Kind::Mixed, 2, 0});
  bool has_trivial = false;
  for (const auto& [t, c] : d.terms)
    for (const Vertex& v : t.vertices) has_trivial = has_trivial || v.trivial();
  CHECK(has_trivial);
}

TEST_CASE("inclusions are chain maps with Pi as a one-sided inverse") {
  for (const char* name : {"cocom:4", "two_level", "coass:3"}) {
    CAPTURE(name);
    Cooperad C = builtin_by_name(name);
    CylContext ctx(C);
    for (int n = 2; n <= C.cap(); ++n)
      for (const Tree& t : ctx.cobar_basis(n)) {
        OperadElement X = ctx.free().element(t);
        CHECK(cyl_diff(ctx, ctx.iota_alpha(X)) == ctx.iota_alpha(cobar_diff(ctx, X)));
        CHECK(cyl_diff(ctx, ctx.iota_beta(X)) == ctx.iota_beta(cobar_diff(ctx, X)));
        CHECK(ctx.projection_pi(ctx.iota_alpha(X)) == X);
        CHECK(ctx.projection_pi(ctx.iota_beta(X)) == X);
        CHECK(ctx.to_alpha(ctx.to_beta(X)) == X);
      }
  }
}
