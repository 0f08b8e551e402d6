#include <algorithm>

#include "cylop/cooperad.hpp"

namespace cylop {

Cooperad builtin_cocom(int N) {
  Cooperad C("cocom", N);
  for (int n = 2; n <= N; ++n) C.set_basis(n, GradedBasis({{"nu" + std::to_string(n), 0}}));
  for (int m = 2; m <= N; ++m)
    for (int n = 2; n < m; ++n)
      for (int i = 1; i <= n; ++i) C.set_coinsertion(n, m - n + 1, i, 0, {CoTerm{1, 0, 0}});
  C.finalize();
  return C;
}

Cooperad builtin_cocom_eps(int N) {
  Cooperad C("cocom_eps", N);
  for (int n = 2; n <= N; ++n)
    C.set_basis(n, GradedBasis({{"nu" + std::to_string(n), 0}, {"eps" + std::to_string(n), -1}}));
  // Delta(nu) = nu (x) nu, Delta(eps) = eps (x) nu + nu (x) eps; eps has no
  // arity-1 component.
  for (int m = 2; m <= N; ++m)
    for (int n = 1; n <= m; ++n) {
      const int k = m - n + 1;
      for (int i = 1; i <= n; ++i) {
        C.set_coinsertion(n, k, i, 0, {CoTerm{1, 0, 0}});
        std::vector<CoTerm> e;
        if (n > 1) e.push_back(CoTerm{1, 1, 0});
        if (k > 1) e.push_back(CoTerm{1, 0, 1});
        C.set_coinsertion(n, k, i, 1, e);
      }
    }
  C.finalize();
  return C;
}

Cooperad builtin_coass(int N) {
  Cooperad C("coass", N);
  std::vector<std::vector<Perm>> words(N + 1);
  std::vector<std::map<Perm, int>> index(N + 1);
  for (int n = 1; n <= N; ++n) {
    words[n] = all_perms(n);
    for (std::size_t j = 0; j < words[n].size(); ++j) index[n][words[n][j]] = static_cast<int>(j);
  }
  for (int n = 2; n <= N; ++n) {
    std::vector<BasisEntry> b;
    for (const auto& w : words[n]) {
      std::string l = "w";
      for (int x : w) l += std::to_string(x + 1);
      b.push_back({l, 0});
    }
    C.set_basis(n, GradedBasis(b));
  }
  for (int m = 2; m <= N; ++m) {
    for (int n = 1; n <= m; ++n) {
      const int k = m - n + 1;
      for (int i = 1; i <= n; ++i) {
        const int lo = i - 1, hi = i + k - 2;
        for (std::size_t g = 0; g < words[m].size(); ++g) {
          const Perm& w = words[m][g];
          std::vector<int> pos;
          for (int t = 0; t < m; ++t)
            if (w[t] >= lo && w[t] <= hi) pos.push_back(t);
          if (pos.back() - pos.front() != k - 1) {
            C.set_coinsertion(n, k, i, static_cast<int>(g), {});
            continue;
          }
          Perm up, low;
          for (int t : pos) up.push_back(w[t] - lo);
          for (int t = 0; t < m; ++t) {
            if (w[t] < lo)
              low.push_back(w[t]);
            else if (w[t] > hi)
              low.push_back(w[t] - (k - 1));
            else if (t == pos.front())
              low.push_back(lo);
          }
          C.set_coinsertion(n, k, i, static_cast<int>(g), {CoTerm{1, index[n].at(low), index[k].at(up)}});
        }
      }
    }
  }
  // act(p) w = p^{-1} o w, letterwise.
  for (int n = 2; n <= N; ++n) {
    std::vector<std::pair<Perm, std::vector<SparseVector>>> gens;
    for (int i = 0; i + 1 < n; ++i) {
      Perm s = adjacent_transposition(n, i);
      Perm si = inverse(s);
      std::vector<SparseVector> M(words[n].size());
      for (std::size_t g = 0; g < words[n].size(); ++g) M[g][index[n].at(compose(si, words[n][g]))] = 1;
      gens.emplace_back(s, std::move(M));
    }
    C.set_action(n, gens);
  }
  C.finalize();
  return C;
}

Cooperad builtin_binary_trivial() {
  Cooperad C("binary_trivial", 2);
  C.set_basis(2, GradedBasis({{"E2", 0}}));
  C.finalize();
  return C;
}

Cooperad builtin_two_level() {
  Cooperad C("two_level", 2);
  C.set_basis(2, GradedBasis({{"y", 0}, {"x", 1}}));
  C.set_differential(2, 0, SparseVector{{1, Scalar(1)}});
  C.finalize();
  return C;
}

Cooperad builtin_by_name(const std::string& spec) {
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  int cap = -1;
  if (colon != std::string::npos) {
    try {
      cap = std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw InvalidInput("bad arity cap in '" + spec + "'");
    }
  }
  auto need_cap = [&](int dflt) {
    int c = cap < 0 ? dflt : cap;
    if (c < 2 || c > 8) throw InvalidInput("arity cap out of range in '" + spec + "'");
    return c;
  };
  if (name == "cocom") return builtin_cocom(need_cap(4));
  if (name == "cocom_eps") return builtin_cocom_eps(need_cap(4));
  if (name == "coass") return builtin_coass(need_cap(3));
  if (name == "binary_trivial") return builtin_binary_trivial();
  if (name == "two_level") return builtin_two_level();
  throw InvalidInput("unknown builtin cooperad '" + name + "'");
}

}  // namespace cylop
