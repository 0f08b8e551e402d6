#include "cylop/cooperad.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace cylop {

const std::vector<CoTerm> Cooperad::empty_terms_{};
const SparseVector Cooperad::empty_vec_{};

Cooperad::Cooperad(std::string name, int cap)
    : name_(std::move(name)),
      cap_(cap),
      bases_(cap + 1),
      diff_(cap + 1),
      action_(cap + 1),
      action_gens_(cap + 1),
      trivial_(cap + 1, true) {
  if (cap < 2) throw InvalidInput("arity cap must be at least 2");
  bases_[1] = GradedBasis({{"1", 0}});
  diff_[1].assign(1, {});
}

int Cooperad::dim(int n) const {
  if (n < 1 || n > cap_) return 0;
  return static_cast<int>(bases_[n].size());
}

int Cooperad::degree(int n, int g) const { return bases_.at(n).degree(g); }
const std::string& Cooperad::label(int n, int g) const { return bases_.at(n)[g].label; }
const GradedBasis& Cooperad::basis(int n) const { return bases_.at(n); }

int Cooperad::find_label(int n, const std::string& l) const {
  auto f = bases_.at(n).find(l);
  if (!f) throw InvalidInput("unknown generator label '" + l + "' in arity " + std::to_string(n));
  return static_cast<int>(*f);
}

const SparseVector& Cooperad::differential(int n, int g) const {
  if (n < 1 || n > cap_) return empty_vec_;
  return diff_[n].at(g);
}

const std::vector<CoTerm>& Cooperad::coinsertion(int n, int k, int i, int g) const {
  auto it = coins_.find({n, k, i});
  if (it == coins_.end()) {
    if (n + k - 1 > cap_) throw InvalidInput("coinsertion beyond the arity cap");
    return empty_terms_;
  }
  return it->second.at(g);
}

bool Cooperad::has_coinsertion(int n, int k, int i) const { return coins_.count({n, k, i}) > 0; }

bool Cooperad::trivial_action(int n) const { return n < 2 || n > cap_ || trivial_[n]; }

SparseVector Cooperad::act(const Perm& p, int g) const {
  const int n = static_cast<int>(p.size());
  if (n > cap_) throw InvalidInput("action beyond the arity cap");
  if (trivial_action(n) || is_identity(p)) return SparseVector{{g, Scalar(1)}};
  return action_[n].at(p).at(g);
}

const std::vector<std::pair<Perm, std::vector<SparseVector>>>& Cooperad::action_generators(int n) const {
  return action_gens_.at(n);
}

void Cooperad::set_basis(int n, GradedBasis b) {
  if (n < 2 || n > cap_) throw InvalidInput("basis arity out of range");
  diff_[n].assign(b.size(), {});
  bases_[n] = std::move(b);
}

void Cooperad::set_differential(int n, int g, SparseVector v) { diff_.at(n).at(g) = std::move(v); }

void Cooperad::set_coinsertion(int n, int k, int i, int g, std::vector<CoTerm> terms) {
  const int m = n + k - 1;
  if (n < 1 || k < 1 || m < 2 || m > cap_ || i < 1 || i > n)
    throw InvalidInput("coinsertion index out of range");
  auto& table = coins_[{n, k, i}];
  table.resize(static_cast<std::size_t>(dim(m)));
  for (const auto& t : terms) {
    if (t.lower < 0 || t.lower >= dim(n) || t.upper < 0 || t.upper >= dim(k))
      throw InvalidInput("coinsertion term index out of range");
  }
  table.at(g) = std::move(terms);
}

void Cooperad::set_action(int n, const std::vector<std::pair<Perm, std::vector<SparseVector>>>& gens) {
  if (n < 2 || n > cap_) throw InvalidInput("action arity out of range");
  action_gens_[n] = gens;
  const int d = dim(n);
  std::map<Perm, std::vector<SparseVector>> table;
  std::vector<SparseVector> id(d);
  for (int g = 0; g < d; ++g) id[g][g] = 1;
  table[identity_perm(n)] = id;
  std::deque<Perm> queue{identity_perm(n)};
  auto apply = [&](const std::vector<SparseVector>& A, const SparseVector& v) {
    SparseVector out;
    for (const auto& [g, c] : v) axpy(out, c, A.at(g));
    return out;
  };
  while (!queue.empty()) {
    Perm p = queue.front();
    queue.pop_front();
    for (const auto& [s, M] : gens) {
      if (static_cast<int>(s.size()) != n || static_cast<int>(M.size()) != d)
        throw InvalidInput("action generator has wrong size");
      Perm ps = compose(p, s);
      if (table.count(ps)) continue;
      // act(p o s) = act(s) act(p)
      std::vector<SparseVector> A(d);
      for (int g = 0; g < d; ++g) A[g] = apply(M, table[p][g]);
      table[ps] = std::move(A);
      queue.push_back(ps);
    }
  }
  if (static_cast<long long>(table.size()) != factorial(n))
    throw InvalidInput("action generators do not generate S_" + std::to_string(n));
  action_[n] = std::move(table);
  trivial_[n] = false;
}

void Cooperad::finalize() {
  for (int m = 2; m <= cap_; ++m) {
    const int d = dim(m);
    if (!has_coinsertion(1, m, 1))
      for (int g = 0; g < d; ++g) set_coinsertion(1, m, 1, g, {CoTerm{1, 0, g}});
    for (int i = 1; i <= m; ++i)
      if (!has_coinsertion(m, 1, i))
        for (int g = 0; g < d; ++g) set_coinsertion(m, 1, i, g, {CoTerm{1, g, 0}});
    for (int n = 2; n < m; ++n) {
      int k = m - n + 1;
      for (int i = 1; i <= n; ++i)
        coins_[{n, k, i}].resize(static_cast<std::size_t>(d));
    }
  }
}

std::vector<CoTerm> Cooperad::split(int m, int g, const std::vector<int>& S) const {
  const int k = static_cast<int>(S.size());
  const int n = m - k + 1;
  Perm L;
  int p = -1;
  for (int pos = 0; pos < m; ++pos) {
    bool in = std::binary_search(S.begin(), S.end(), pos);
    if (!in) {
      L.push_back(pos);
    } else if (pos == S.front()) {
      p = static_cast<int>(L.size());
      L.insert(L.end(), S.begin(), S.end());
    }
  }
  std::vector<CoTerm> out;
  for (const auto& [h, c] : act(L, g))
    for (const auto& t : coinsertion(n, k, p + 1, h)) out.push_back(CoTerm{c * t.coeff, t.lower, t.upper});
  return out;
}

std::map<std::vector<int>, Scalar> Cooperad::delta_tree(int m, int g, const Tree& shape,
                                                        const std::vector<int>& cut_order) const {
  std::map<std::vector<int>, Scalar> result;
  if (shape.bare()) throw InvalidInput("delta_tree needs at least one vertex");
  if (shape.arity() != m) throw InvalidInput("tree arity does not match generator arity");
  const int V = shape.num_vertices();
  for (const auto& v : shape.vertices)
    if (v.arity() > cap_) throw InvalidInput("tree vertex arity exceeds the cap");
  std::vector<int> parent(V, -1);
  for (int u = 0; u < V; ++u)
    for (int c : shape.vertices[u].children)
      if (c >= 0) parent[c] = u;
  auto below = [&](int u, int w) {  // u lies in the subtree of w
    while (u >= 0) {
      if (u == w) return true;
      u = parent[u];
    }
    return false;
  };
  const auto minl = min_leaves(shape);
  std::vector<int> cuts = cut_order;
  if (cuts.empty())
    for (int u = 0; u < V; ++u)
      if (u != shape.root) cuts.push_back(u);
  if (static_cast<int>(cuts.size()) != V - 1) throw InvalidInput("cut order must list every non-root vertex");

  struct Piece {
    std::vector<char> member;
    int dec;
  };
  // Inputs of a piece: (key, owner vertex), sorted by key.
  auto inputs = [&](const Piece& pc) {
    std::vector<std::pair<int, int>> in;
    for (int u = 0; u < V; ++u) {
      if (!pc.member[u]) continue;
      for (int c : shape.vertices[u].children) {
        if (c < 0)
          in.emplace_back(-c, u);
        else if (!pc.member[c])
          in.emplace_back(minl[c], u);
      }
    }
    std::sort(in.begin(), in.end());
    return in;
  };

  std::function<void(std::size_t, std::vector<Piece>&, const Scalar&)> go =
      [&](std::size_t step, std::vector<Piece>& pieces, const Scalar& coeff) {
        if (step == cuts.size()) {
          // One vertex per piece; sort into vertex order with Koszul sign.
          std::vector<int> vert(pieces.size()), degs(pieces.size());
          std::vector<int> dec(V);
          for (std::size_t j = 0; j < pieces.size(); ++j) {
            int v = static_cast<int>(std::find(pieces[j].member.begin(), pieces[j].member.end(), 1) -
                                     pieces[j].member.begin());
            vert[j] = v;
            degs[j] = degree(shape.vertices[v].arity(), pieces[j].dec);
            dec[v] = pieces[j].dec;
          }
          std::vector<int> order(pieces.size());
          for (std::size_t j = 0; j < order.size(); ++j) order[j] = static_cast<int>(j);
          std::sort(order.begin(), order.end(), [&](int a, int b) { return vert[a] < vert[b]; });
          Scalar c = koszul_parity(order, degs) ? Scalar(-coeff) : coeff;
          auto& slot = result[dec];
          slot += c;
          if (slot == 0) result.erase(dec);
          return;
        }
        const int w = cuts[step];
        std::size_t j = 0;
        while (j < pieces.size() && !pieces[j].member[w]) ++j;
        const Piece& pc = pieces[j];
        if (parent[w] < 0 || !pc.member[parent[w]]) throw InvalidInput("invalid cut order");
        auto in = inputs(pc);
        std::vector<int> S;
        for (std::size_t t = 0; t < in.size(); ++t)
          if (below(in[t].second, w)) S.push_back(static_cast<int>(t));
        Piece lo{pc.member, 0}, up{std::vector<char>(V, 0), 0};
        for (int u = 0; u < V; ++u)
          if (pc.member[u] && below(u, w)) {
            lo.member[u] = 0;
            up.member[u] = 1;
          }
        const int arity = static_cast<int>(in.size());
        for (const auto& t : split(arity, pc.dec, S)) {
          if (t.coeff == 0) continue;
          std::vector<Piece> next = pieces;
          lo.dec = t.lower;
          up.dec = t.upper;
          next[j] = lo;
          next.insert(next.begin() + static_cast<long>(j) + 1, up);
          go(step + 1, next, coeff * t.coeff);
        }
      };
  std::vector<Piece> start{Piece{std::vector<char>(V, 1), g}};
  go(0, start, Scalar(1));
  return result;
}

}  // namespace cylop
