#include <random>

#include "cylop/io.hpp"
#include "doctest.h"

using namespace cylop;

namespace {

std::string fixture(const std::string& name) { return std::string(CYLOP_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("scalars round trip") {
  for (const char* s : {"0", "-3", "7/4", "-22/7"}) CHECK(scalar_from_json(scalar_to_json(parse_scalar(s))) == parse_scalar(s));
  CHECK(scalar_from_json(Json(5)) == 5);
  CHECK_THROWS_AS(scalar_from_json(Json("1/0")), InvalidInput);
  CHECK_THROWS_AS(scalar_from_json(Json("x")), InvalidInput);
}

TEST_CASE("elements and derivations round trip") {
  Cooperad C = builtin_cocom_eps(3);
  CylContext ctx(C);
  for (int n = 2; n <= 3; ++n)
    for (const Tree& t : ctx.cyl_basis(n)) {
      OperadElement e = ctx.diff(ctx.free().element(t));
      CHECK(element_from_json(ctx, element_to_json(ctx, e)) == e);
    }
  std::mt19937_64 rng(3);
  auto basis = derivation_space(ctx, Flavor::Cobar, 0, 1, true);
  REQUIRE_FALSE(basis.empty());
  Derivation D = random_combination(basis, rng, Flavor::Cobar, 0);
  CHECK(derivation_from_json(ctx, derivation_to_json(ctx, D)) == D);
  LiftResult r = lift_derivation(ctx, D);
  CHECK(derivation_from_json(ctx, derivation_to_json(ctx, r.lifted)) == r.lifted);
}

TEST_CASE("structures and convolution inputs round trip") {
  Cooperad C = builtin_cocom_eps(3);
  CylContext ctx(C);
  AlgebraStructure F = structure_from_json(ctx, read_json_file(fixture("cocom_eps3_triple.json")));
  CHECK(F.flavor == Flavor::Cyl);
  AlgebraStructure G = structure_from_json(ctx, structure_to_json(ctx, F));
  CHECK(G.values == F.values);
  CHECK(G.V.basis.size() == F.V.basis.size());
  ConvInput in = conv_from_json(ctx, read_json_file(fixture("zero_element.json")));
  CHECK_FALSE(in.end_target);
  ConvInput back = conv_from_json(ctx, conv_to_json(ctx, in));
  CHECK(back.free_values == in.free_values);
  CHECK(back.degree == in.degree);
}

TEST_CASE("cooperads round trip through JSON and truncate") {
  CHECK(validate(load_cooperad(fixture("cocom3.json"))).ok);
  Cooperad C = builtin_coass(3);
  Cooperad D = cooperad_from_json(cooperad_to_json(C));
  CHECK(cooperad_to_json(D) == cooperad_to_json(C));
  CHECK(validate(D).ok);
  Cooperad T = truncate_cooperad(builtin_cocom(4), 2);
  CHECK(T.cap() == 2);
  CHECK(validate(T).ok);
}

TEST_CASE("malformed input is rejected") {
  Cooperad C = builtin_cocom(3);
  CylContext ctx(C);
  CHECK_THROWS(read_json_file(fixture("missing.json")));
  CHECK_THROWS(load_cooperad("nosuch:3"));
  CHECK_THROWS(tree_from_json(C, Json::parse(R"({"kind": "alpha"})")));
  CHECK_THROWS(gen_from_json(C, Json::parse(R"({"arity": 2, "color_profile": "alpha", "generator_label": "zz"})")));
  CHECK_THROWS(derivation_from_json(ctx, Json::parse(R"({"flavor": "cobar", "degree": 0, "values": 3})")));
  CHECK_THROWS(space_from_json(Json::parse(R"({"basis": [{"label": "e", "degree": 0}],
      "differential": [{"from": 0, "to": 5, "coeff": "1"}]})")));
}
