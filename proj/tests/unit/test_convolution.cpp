#include <random>

#include "cylop/convolution.hpp"
#include "doctest.h"

using namespace cylop;

namespace {

using Conv = ColoredConvolution<FreeTarget>;
using CE = ConvElement<FreeTarget>;

CE identity_element(const CylContext& ctx, const Conv& L) {
  CE id = L.zero(0);
  for (const Gen& g : L.domain()) id.values.emplace(g, ctx.gen_element(g));
  return id;
}

}  // namespace

TEST_CASE("the identity map is Maurer-Cartan") {
  for (const char* name : {"cocom:3", "coass:3", "cocom_eps:3", "two_level"}) {
    CAPTURE(name);
    Cooperad C = builtin_by_name(name);
    CylContext ctx(C);
    FreeTarget T(ctx);
    Conv L(ctx, T);
    CE id = identity_element(ctx, L);
    CHECK(L.is_equivariant(id));
    CHECK(L.mc_check(id).ok);
    CHECK(L.chain_map_check(id).ok);
    LieConvolution<FreeTarget> Lie(C, T);
    ConvElement<FreeTarget> s = Lie.zero(1);
    for (const Gen& g : Lie.domain()) s.values.emplace(g, ctx.gen_element(g));
    CHECK(Lie.is_zero(Lie.mc_curvature(s)));
  }
}

TEST_CASE("shifted L-infinity identities on random elements") {
  std::mt19937_64 rng(21);
  for (const char* name : {"coass:3", "cocom_eps:3"}) {
    CAPTURE(name);
    Cooperad C = builtin_by_name(name);
    CylContext ctx(C);
    FreeTarget T(ctx);
    Conv L(ctx, T);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<CE> fs;
      for (int i = 0; i < 3; ++i) fs.push_back(L.random_element(rng, static_cast<int>(rng() % 3) - 1, 1, 99, 2));
      for (int m = 1; m <= 3; ++m) {
        std::vector<const CE*> args;
        for (int i = 0; i < m; ++i) args.push_back(&fs[i]);
        CHECK(L.is_zero(L.identity_defect(args)));
      }
    }
  }
}

TEST_CASE("binary bracket on single-color elements is the shifted Lie bracket") {
  std::mt19937_64 rng(5);
  Cooperad C = builtin_cocom_eps(3);
  CylContext ctx(C);
  FreeTarget T(ctx);
  Conv L(ctx, T);
  LieConvolution<FreeTarget> Lie(C, T);
  for (int trial = 0; trial < 12; ++trial) {
    CE F = L.random_element(rng, static_cast<int>(rng() % 3) - 1, 1, 99, 3);
    CE G = L.random_element(rng, static_cast<int>(rng() % 3) - 1, 1, 99, 3);
    CE Fa = L.zero(F.degree), Ga = L.zero(G.degree), f = Lie.zero(F.degree + 1), g = Lie.zero(G.degree + 1);
    for (auto& [k, v] : F.values)
      if (k.kind == Kind::Alpha) {
        Fa.values.emplace(k, v);
        f.values.emplace(k, v);
      }
    for (auto& [k, v] : G.values)
      if (k.kind == Kind::Alpha) {
        Ga.values.emplace(k, v);
        g.values.emplace(k, v);
      }
    auto alpha_part = [&](const CE& x) {
      CE r = Lie.zero(x.degree + 1);
      for (auto& [k, v] : x.values)
        if (k.kind == Kind::Alpha) r.values.emplace(k, v);
      return r;
    };
    CE shifted = alpha_part(L.bracket({&Fa, &Ga}));
    CHECK(Lie.equal(Lie.bracket(f, g), alpha_part(L.linf_bracket({&Fa, &Ga}))));
    CHECK(Lie.equal(Lie.bracket(f, g), (F.degree & 1) ? Lie.scale(shifted, -1) : shifted));
  }
}

TEST_CASE("filtration levels") {
  Cooperad C = builtin_cocom(3);
  CylContext ctx(C);
  FreeTarget T(ctx);
  Conv L(ctx, T);
  CHECK(L.filtration_level(L.zero(0)) == (1 << 20));
  CE f = L.zero(0);
  f.values.emplace(Gen{Kind::Alpha, 3, 0}, ctx.gen_element(Gen{Kind::Alpha, 3, 0}));
  CHECK(L.filtration_level(f) == 2);
  const Color beta = Color::Beta, alpha = Color::Alpha;
  CHECK(L.filtration_level(f, &beta) == -1);
  CHECK(L.filtration_level(f, &alpha) == 2);
  CE id = identity_element(ctx, L);
  CHECK(L.filtration_level(id) == 0);
}

TEST_CASE("gauge action preserves Maurer-Cartan elements and is invertible") {
  Cooperad C = builtin_cocom_eps(3);
  CylContext ctx(C);
  FreeTarget T(ctx);
  Conv L(ctx, T);
  std::mt19937_64 rng(12);
  CE id = identity_element(ctx, L);
  int moved = 0;
  for (int trial = 0; trial < 3; ++trial) {
    CE lam = L.random_element(rng, -1, 2, 99, 3);
    CE a = L.gauge_act(lam, id);
    moved += !L.equal(a, id);
    CHECK(L.mc_check(a).ok);
    CHECK(L.equal(L.gauge_act(L.scale(lam, -1), a), id));
  }
  CHECK(moved > 0);
  CHECK(L.equal(L.gauge_act(L.zero(-1), id), id));
}

TEST_CASE("twisting shifts the Maurer-Cartan locus") {
  Cooperad C = builtin_cocom(3);
  CylContext ctx(C);
  FreeTarget T(ctx);
  Conv L(ctx, T);
  CE id = identity_element(ctx, L);
  CE two = L.zero(0);
  for (const Gen& g : L.domain()) {
    Scalar c = 1;
    for (int i = 1; i < g.arity; ++i) c *= 2;
    two.values.emplace(g, c * ctx.gen_element(g));
  }
  CHECK(L.mc_check(two).ok);
  CHECK(L.is_zero(L.twisted_curvature(id, L.add(two, id, -1))));
  CHECK(L.is_zero(L.twisted_curvature(id, L.zero(0))));
  CE bad = L.scale(id, 3);
  CHECK_FALSE(L.mc_check(bad).ok);
  CHECK_FALSE(L.is_zero(L.twisted_curvature(id, L.add(bad, id, -1))));
  CHECK_THROWS_AS(L.mc_to_operad_map(bad), InvalidInput);
}
