#include <random>

#include "cylop/linear.hpp"
#include "doctest.h"

using namespace cylop;

namespace {

// Dense rank modulo a large prime.
std::size_t rank_mod_p(std::vector<std::vector<long long>> a) {
  const long long p = 1000000007LL;
  auto inv = [&](long long x) {
    long long r = 1, e = p - 2;
    x %= p;
    while (e) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (auto& row : a)
    for (auto& x : row) x = ((x % p) + p) % p;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const long long iv = inv(a[rank][c]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const long long f = a[r][c] * iv % p;
      for (std::size_t k = 0; k < cols; ++k) a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("scalars parse and print canonically") {
  CHECK(to_string(parse_scalar("2/4")) == "1/2");
  CHECK(to_string(parse_scalar("-3")) == "-3");
  CHECK(to_string(parse_scalar("-6/4")) == "-3/2");
  CHECK_THROWS_AS(parse_scalar("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_scalar("abc"), InvalidInput);
}

TEST_CASE("rank, kernel and affine solve agree with a modular oracle") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    std::vector<std::vector<long long>> dense(rows, std::vector<long long>(cols));
    std::vector<std::vector<Scalar>> q(rows, std::vector<Scalar>(cols));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        long long v = rng() % 3 == 0 ? static_cast<long long>(rng() % 7) - 3 : 0;
        dense[r][c] = v;
        q[r][c] = Scalar(static_cast<long>(v));
      }
    LinearMapRep A = LinearMapRep::from_rows(q, cols);
    const std::size_t rk = rank(A);
    CHECK(rk == rank_mod_p(dense));
    auto ker = kernel_basis(A);
    CHECK(ker.size() == cols - rk);
    for (const auto& k : ker) CHECK(is_zero(A.apply(k)));
    CHECK(rank_of(ker) == ker.size());
    SparseVector x;
    for (std::size_t c = 0; c < cols; ++c) x[static_cast<int>(c)] = Scalar(static_cast<long>(rng() % 5) - 2);
    SparseVector b = A.apply(x);
    auto sol = solve_affine(A, b);
    REQUIRE(sol.has_value());
    CHECK(A.apply(*sol) == b);
  }
}

TEST_CASE("inconsistent systems have no solution") {
  LinearMapRep A = LinearMapRep::from_rows({{1, 1}, {2, 2}}, 2);
  CHECK_FALSE(solve_affine(A, SparseVector{{0, 1}, {1, 3}}).has_value());
}

TEST_CASE("Koszul signs of transpositions of odd elements") {
  CHECK(koszul_parity({1, 0}, {1, 1}) == 1);
  CHECK(koszul_parity({1, 0}, {1, 0}) == 0);
  CHECK(koszul_parity({2, 1, 0}, {1, 1, 1}) == 1);
  CHECK(koszul_parity({0, 1, 2}, {1, 1, 1}) == 0);
}
