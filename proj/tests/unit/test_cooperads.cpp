#include "cylop/io.hpp"
#include "doctest.h"

using namespace cylop;

TEST_CASE("builtin cooperads satisfy the axioms") {
  for (const char* name : {"cocom:4", "coass:3", "binary_trivial", "two_level", "cocom_eps:4"}) {
    CAPTURE(name);
    Report r = validate(builtin_by_name(name));
    CHECK(r.ok);
    CHECK(r.checks > 0);
  }
}

TEST_CASE("builtin dimensions") {
  Cooperad A = builtin_coass(4);
  CHECK(A.dim(2) == 2);
  CHECK(A.dim(3) == 6);
  CHECK(A.dim(4) == 24);
  Cooperad C = builtin_cocom(4);
  for (int n = 2; n <= 4; ++n) CHECK(C.dim(n) == 1);
  Cooperad T = builtin_two_level();
  CHECK(T.dim(2) == 2);
  CHECK(T.differential(2, T.find_label(2, "y")).count(T.find_label(2, "x")) == 1);
}

TEST_CASE("coass action permutes the word basis") {
  Cooperad A = builtin_coass(3);
  const int w = A.find_label(3, "w123");
  SparseVector img = A.act({1, 0, 2}, w);
  REQUIRE(img.size() == 1);
  CHECK(A.label(3, img.begin()->first) != "w123");
}

TEST_CASE("planted coassociativity failure is located") {
  Json j = cooperad_to_json(builtin_cocom(3));
  for (auto& c : j["components"])
    if (c["arity"] == 3)
      for (auto& ci : c["coinsertions"])
        if (ci["n"] == 2 && ci["i"] == 2) ci["entries"][0]["coeff"] = "2";
  Report r = validate(cooperad_from_json(j));
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.failures.empty());
  CHECK(r.failures.front().find("nu3") != std::string::npos);
}

TEST_CASE("JSON round trip preserves the presentation") {
  for (const char* name : {"cocom:4", "coass:3", "two_level", "cocom_eps:3"}) {
    CAPTURE(name);
    Cooperad C = builtin_by_name(name);
    Json j = cooperad_to_json(C);
    Cooperad D = cooperad_from_json(Json::parse(j.dump()));
    CHECK(cooperad_to_json(D) == j);
    CHECK(validate(D).ok);
  }
}

TEST_CASE("truncation keeps the lower arities") {
  Cooperad C = truncate_cooperad(builtin_cocom(5), 3);
  CHECK(C.cap() == 3);
  CHECK(validate(C).ok);
  CHECK_THROWS_AS(truncate_cooperad(builtin_cocom(3), 5), InvalidInput);
}

TEST_CASE("malformed cooperad input is rejected") {
  CHECK_THROWS_AS(builtin_by_name("nosuch:3"), InvalidInput);
  CHECK_THROWS_AS(builtin_by_name("cocom:x"), InvalidInput);
  Json j = cooperad_to_json(builtin_cocom(3));
  j["components"][0]["coinsertions"][0]["entries"][0]["lower"] = "missing";
  CHECK_THROWS_AS(cooperad_from_json(j), InvalidInput);
  Json k = {{"name", "x"}, {"components", Json::array()}};
  CHECK_THROWS_AS(cooperad_from_json(k), InvalidInput);
}
