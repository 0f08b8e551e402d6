#include "cylop/combinatorics.hpp"

#include <algorithm>
#include <numeric>

namespace cylop {

Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm inverse(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return q;
}

Perm compose(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[static_cast<std::size_t>(q[i])];
  return r;
}

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

Perm adjacent_transposition(int n, int i) {
  Perm p = identity_perm(n);
  std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i + 1)]);
  return p;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int perm_parity(const Perm& p) {
  int par = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) par ^= 1;
  return par;
}

namespace {

void partitions_rec(int i, int n, std::vector<std::vector<int>>& cur,
                    std::vector<std::vector<std::vector<int>>>& out) {
  if (i == n) {
    out.push_back(cur);
    return;
  }
  for (std::size_t b = 0; b < cur.size(); ++b) {
    cur[b].push_back(i);
    partitions_rec(i + 1, n, cur, out);
    cur[b].pop_back();
  }
  cur.push_back({i});
  partitions_rec(i + 1, n, cur, out);
  cur.pop_back();
}

}  // namespace

std::vector<std::vector<std::vector<int>>> set_partitions_at_least(int n, int min_blocks) {
  std::vector<std::vector<std::vector<int>>> all, out;
  std::vector<std::vector<int>> cur;
  if (n == 0) return out;
  partitions_rec(0, n, cur, all);
  for (auto& p : all)
    if (static_cast<int>(p.size()) >= min_blocks) out.push_back(std::move(p));
  return out;
}

std::vector<std::vector<std::vector<int>>> set_partitions(int n, int k) {
  std::vector<std::vector<std::vector<int>>> out;
  for (auto& p : set_partitions_at_least(n, k))
    if (static_cast<int>(p.size()) == k) out.push_back(std::move(p));
  return out;
}

std::vector<std::vector<int>> subsets(int n, int lo, int hi) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int c = __builtin_popcount(mask);
    if (c < lo || c > hi) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Perm> unshuffles(int m, int p) {
  std::vector<Perm> out;
  for (const auto& s : subsets(m, p, p)) {
    Perm perm = s;
    for (int i = 0; i < m; ++i)
      if (!std::binary_search(s.begin(), s.end(), i)) perm.push_back(i);
    out.push_back(std::move(perm));
  }
  return out;
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long long stirling2(int n, int k) {
  std::vector<std::vector<long long>> s(static_cast<std::size_t>(n + 1),
                                        std::vector<long long>(static_cast<std::size_t>(k + 1), 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= k; ++j)
      s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          j * s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] +
          s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
  return s[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

}  // namespace cylop
