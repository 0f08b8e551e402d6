#include <algorithm>

#include "cylop/cooperad.hpp"

namespace cylop {

namespace {

using PairMap = std::map<std::pair<int, int>, Scalar>;

void add(PairMap& m, int a, int b, const Scalar& c) {
  if (c == 0) return;
  auto& s = m[{a, b}];
  s += c;
  if (s == 0) m.erase({a, b});
}

std::string where(const Cooperad& C, int n, int g) {
  return C.label(n, g) + " (arity " + std::to_string(n) + ")";
}

SparseVector apply_act(const Cooperad& C, const Perm& p, const SparseVector& v) {
  SparseVector out;
  for (const auto& [g, c] : v) axpy(out, c, C.act(p, g));
  return out;
}

void check_differential(const Cooperad& C, Report& r) {
  for (int n = 2; n <= C.cap(); ++n)
    for (int g = 0; g < C.dim(n); ++g) {
      const auto& d = C.differential(n, g);
      bool degree_ok = true;
      for (const auto& [h, c] : d)
        if (h < 0 || h >= C.dim(n) || C.degree(n, h) != C.degree(n, g) + 1) degree_ok = false;
      r.check(degree_ok, "differential does not have degree +1 on " + where(C, n, g));
      if (!degree_ok) continue;
      SparseVector dd;
      for (const auto& [h, c] : d) axpy(dd, c, C.differential(n, h));
      r.check(dd.empty(), "differential squares to nonzero on " + where(C, n, g));
    }
}

void check_action(const Cooperad& C, Report& r) {
  for (int n = 2; n <= C.cap(); ++n) {
    if (C.trivial_action(n)) continue;
    for (const auto& [p, M] : C.action_generators(n))
      for (int g = 0; g < C.dim(n); ++g)
        r.check(C.act(p, g) == M[g], "action generator inconsistent with its closure on " + where(C, n, g));
    const int d = C.dim(n);
    for (const auto& p : all_perms(n)) {
      for (int g = 0; g < d; ++g) {
        for (const auto& [h, c] : C.act(p, g))
          r.check(C.degree(n, h) == C.degree(n, g), "action does not preserve degree on " + where(C, n, g));
        for (int i = 0; i + 1 < n; ++i) {
          Perm s = adjacent_transposition(n, i);
          r.check(C.act(compose(p, s), g) == apply_act(C, s, C.act(p, g)),
                  "action is not a representation on " + where(C, n, g));
        }
        // delta commutes with the action
        SparseVector a = C.differential(n, g);
        SparseVector lhs;
        for (const auto& [h, c] : C.act(p, g)) axpy(lhs, c, C.differential(n, h));
        r.check(lhs == apply_act(C, p, a), "differential is not equivariant on " + where(C, n, g));
      }
    }
  }
}

void check_coinsertions(const Cooperad& C, Report& r) {
  for (int m = 2; m <= C.cap(); ++m)
    for (int n = 1; n <= m; ++n) {
      const int k = m - n + 1;
      for (int i = 1; i <= n; ++i)
        for (int g = 0; g < C.dim(m); ++g) {
          const auto& terms = C.coinsertion(n, k, i, g);
          const std::string id = "Delta_" + std::to_string(i) + " (" + std::to_string(n) + "," +
                                 std::to_string(k) + ") on " + where(C, m, g);
          bool deg_ok = true;
          for (const auto& t : terms)
            if (C.degree(n, t.lower) + C.degree(k, t.upper) != C.degree(m, g)) deg_ok = false;
          r.check(deg_ok, "degree mismatch in " + id);
          PairMap got;
          for (const auto& t : terms) add(got, t.lower, t.upper, t.coeff);
          if (n == 1 || k == 1) {
            PairMap want;
            add(want, n == 1 ? 0 : g, n == 1 ? g : 0, 1);
            r.check(got == want, "counit law fails for " + id);
            continue;
          }
          // coderivation: Delta(d g) = (d (x) 1 + 1 (x) d) Delta(g)
          PairMap lhs, rhs;
          for (const auto& [h, c] : C.differential(m, g))
            for (const auto& t : C.coinsertion(n, k, i, h)) add(lhs, t.lower, t.upper, c * t.coeff);
          for (const auto& t : terms) {
            for (const auto& [h, c] : C.differential(n, t.lower)) add(rhs, h, t.upper, c * t.coeff);
            Scalar s = (C.degree(n, t.lower) & 1) ? Scalar(-1) : Scalar(1);
            for (const auto& [h, c] : C.differential(k, t.upper)) add(rhs, t.lower, h, s * c * t.coeff);
          }
          r.check(lhs == rhs, "coderivation law fails for " + id);
        }
    }
}

void check_split_equivariance(const Cooperad& C, Report& r) {
  for (int m = 2; m <= C.cap(); ++m) {
    std::vector<Perm> perms;
    if (m <= 4) {
      perms = all_perms(m);
    } else {
      for (int i = 0; i + 1 < m; ++i) perms.push_back(adjacent_transposition(m, i));
    }
    const auto subs = subsets(m, 1, m);
    for (int g = 0; g < C.dim(m); ++g)
      for (const auto& p : perms) {
        const SparseVector y = C.act(p, g);
        for (const auto& S : subs) {
          PairMap lhs;
          for (const auto& [h, c] : y)
            for (const auto& t : C.split(m, h, S)) add(lhs, t.lower, t.upper, c * t.coeff);
          std::vector<int> Sx;
          for (int s : S) Sx.push_back(p[s]);
          std::sort(Sx.begin(), Sx.end());
          // Items of the lower inputs; -1 is the grafted block.
          auto items = [&](const std::vector<int>& set) {
            std::vector<int> it;
            for (int q = 0; q < m; ++q) {
              if (!std::binary_search(set.begin(), set.end(), q))
                it.push_back(q);
              else if (q == set.front())
                it.push_back(-1);
            }
            return it;
          };
          auto ly = items(S), lx = items(Sx);
          Perm rho_low(ly.size()), rho_up(S.size());
          for (std::size_t t = 0; t < ly.size(); ++t) {
            int mapped = ly[t] < 0 ? -1 : p[ly[t]];
            rho_low[t] = static_cast<int>(std::find(lx.begin(), lx.end(), mapped) - lx.begin());
          }
          for (std::size_t t = 0; t < S.size(); ++t)
            rho_up[t] = static_cast<int>(std::find(Sx.begin(), Sx.end(), p[S[t]]) - Sx.begin());
          PairMap rhs;
          for (const auto& t : C.split(m, g, Sx)) {
            for (const auto& [a, ca] : C.act(rho_low, t.lower))
              for (const auto& [b, cb] : C.act(rho_up, t.upper)) add(rhs, a, b, t.coeff * ca * cb);
          }
          std::string sdesc;
          for (int s : S) sdesc += std::to_string(s + 1);
          r.check(lhs == rhs, "coinsertions are not equivariant on " + where(C, m, g) + " for inputs {" +
                                  sdesc + "}");
        }
      }
  }
}

void check_coassociativity(const Cooperad& C, Report& r) {
  for (int m = 3; m <= C.cap(); ++m) {
    std::vector<int> labels;
    for (int l = 1; l <= m; ++l) labels.push_back(l);
    for (const auto& shape : enumerate_reduced_shapes(labels, Kind::Alpha)) {
      if (shape.num_vertices() != 3) continue;
      std::vector<int> fwd = {1, 2}, bwd = {2, 1};
      for (int g = 0; g < C.dim(m); ++g)
        r.check(C.delta_tree(m, g, shape, fwd) == C.delta_tree(m, g, shape, bwd),
                "coassociativity fails on " + where(C, m, g) + " for tree " + shape.str());
    }
  }
}

}  // namespace

Report validate(const Cooperad& C) {
  Report r;
  check_differential(C, r);
  check_action(C, r);
  check_coinsertions(C, r);
  if (r.ok) {
    check_split_equivariance(C, r);
    check_coassociativity(C, r);
  }
  return r;
}

}  // namespace cylop
