#include "cylop/linear.hpp"

#include <algorithm>
#include <set>

namespace cylop {

Scalar parse_scalar(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t.push_back(c);
  if (t.empty()) throw InvalidInput("empty rational literal");
  if (t[0] == '+') t.erase(0, 1);
  auto ok = [](const std::string& s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!ok(num) || !ok(den) || den[0] == '-') throw InvalidInput("bad rational literal: " + text);
  mpz_class n(num), d(den);
  if (d == 0) throw InvalidInput("zero denominator: " + text);
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar& q) { return q.get_str(); }

void axpy(SparseVector& y, const Scalar& a, const SparseVector& x) {
  if (a == 0) return;
  for (const auto& [k, v] : x) {
    auto it = y.find(k);
    if (it == y.end()) {
      y.emplace(k, a * v);
    } else {
      it->second += a * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

bool is_zero(const SparseVector& v) {
  for (const auto& kv : v)
    if (kv.second != 0) return false;
  return true;
}

GradedBasis::GradedBasis(std::vector<BasisEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].label, i).second)
      throw InvalidInput("duplicate basis label: " + entries_[i].label);
  }
}

GradedBasis GradedBasis::anonymous(std::size_t n, int degree) {
  std::vector<BasisEntry> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({"e" + std::to_string(i), degree});
  return GradedBasis(std::move(e));
}

std::optional<std::size_t> GradedBasis::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LinearMapRep::LinearMapRep(GradedBasis src, GradedBasis tgt, int shift_)
    : source(std::move(src)), target(std::move(tgt)), shift(shift_), columns(source.size()) {}

LinearMapRep LinearMapRep::from_rows(const std::vector<std::vector<Scalar>>& rows,
                                     std::size_t ncols) {
  LinearMapRep m(GradedBasis::anonymous(ncols), GradedBasis::anonymous(rows.size()), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) throw InvalidInput("ragged matrix");
    for (std::size_t c = 0; c < ncols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void LinearMapRep::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (r >= rows() || c >= cols()) throw InvalidInput("matrix index out of range");
  if (v == 0)
    columns[c].erase(static_cast<int>(r));
  else
    columns[c][static_cast<int>(r)] = v;
}

Scalar LinearMapRep::at(std::size_t r, std::size_t c) const {
  auto it = columns.at(c).find(static_cast<int>(r));
  return it == columns[c].end() ? Scalar(0) : it->second;
}

SparseVector LinearMapRep::apply(const SparseVector& v) const {
  SparseVector out;
  for (const auto& [c, a] : v) {
    if (c < 0 || static_cast<std::size_t>(c) >= cols()) throw InvalidInput("vector index out of range");
    axpy(out, a, columns[static_cast<std::size_t>(c)]);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> LinearMapRep::degree_violations() const {
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& [r, v] : columns[c])
      if (target.degree(static_cast<std::size_t>(r)) != source.degree(c) + shift)
        bad.emplace_back(static_cast<std::size_t>(r), c);
  return bad;
}

LinearMapRep compose(const LinearMapRep& outer, const LinearMapRep& inner) {
  if (outer.cols() != inner.rows()) throw InvalidInput("maps are not composable");
  LinearMapRep out(inner.source, outer.target, inner.shift + outer.shift);
  for (std::size_t c = 0; c < inner.cols(); ++c) out.columns[c] = outer.apply(inner.columns[c]);
  return out;
}

SparseVector Echelon::reduce(SparseVector v, SparseVector* combo) const {
  auto it = v.begin();
  while (it != v.end()) {
    auto r = rows_.find(it->first);
    if (r == rows_.end()) {
      ++it;
      continue;
    }
    int key = it->first;
    Scalar c = it->second;
    axpy(v, -c, r->second.v);
    if (combo != nullptr && track_) axpy(*combo, c, r->second.history);
    it = v.upper_bound(key);
  }
  return v;
}

bool Echelon::insert(const SparseVector& v, int tag) {
  SparseVector combo;
  SparseVector rem = reduce(v, track_ ? &combo : nullptr);
  if (rem.empty()) {
    if (track_) {
      // v - combo = 0, so tag - combo is a relation among inserted vectors.
      SparseVector rel;
      rel[tag] = 1;
      axpy(rel, -1, combo);
      relations_.push_back(std::move(rel));
    }
    return false;
  }
  int pivot = rem.begin()->first;
  Scalar inv = 1 / rem.begin()->second;
  for (auto& kv : rem) kv.second *= inv;
  SparseVector hist;
  if (track_) {
    hist[tag] = 1;
    axpy(hist, -1, combo);
    for (auto& kv : hist) kv.second *= inv;
  }
  // Keep stored rows fully reduced against the new pivot.
  for (auto& [p, row] : rows_) {
    auto f = row.v.find(pivot);
    if (f == row.v.end()) continue;
    Scalar c = f->second;
    axpy(row.v, -c, rem);
    if (track_) axpy(row.history, -c, hist);
  }
  rows_.emplace(pivot, Row{std::move(rem), std::move(hist)});
  return true;
}

int koszul_parity(const std::vector<int>& order, const std::vector<int>& degrees) {
  int parity = 0;
  const std::size_t m = order.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (order[i] > order[j])
        parity ^= (degrees[static_cast<std::size_t>(order[i])] & 1) &
                  (degrees[static_cast<std::size_t>(order[j])] & 1);
  return parity;
}

Scalar koszul_sign(const std::vector<int>& permutation, const std::vector<int>& degrees) {
  if (permutation.size() != degrees.size()) throw InvalidInput("permutation and degree lengths differ");
  std::vector<int> order;
  std::set<int> seen;
  for (int p : permutation) {
    if (p < 1 || p > static_cast<int>(permutation.size()) || !seen.insert(p).second)
      throw InvalidInput("not a permutation");
    order.push_back(p - 1);
  }
  return koszul_parity(order, degrees) ? Scalar(-1) : Scalar(1);
}

std::size_t rank(const LinearMapRep& map) {
  Echelon e;
  for (const auto& c : map.columns) e.insert(c);
  return e.rank();
}

std::size_t rank_of(const std::vector<SparseVector>& vectors) {
  Echelon e;
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

std::vector<SparseVector> kernel_basis(const LinearMapRep& map) {
  Echelon e(true);
  for (std::size_t c = 0; c < map.cols(); ++c) e.insert(map.columns[c], static_cast<int>(c));
  return e.relations();
}

std::optional<SparseVector> solve_affine(const LinearMapRep& map, const SparseVector& rhs) {
  for (const auto& kv : rhs)
    if (kv.first < 0 || static_cast<std::size_t>(kv.first) >= map.rows())
      throw InvalidInput("right-hand side outside the target space");
  Echelon e(true);
  for (std::size_t c = 0; c < map.cols(); ++c) e.insert(map.columns[c], static_cast<int>(c));
  SparseVector combo;
  SparseVector rem = e.reduce(rhs, &combo);
  if (!rem.empty()) return std::nullopt;
  return combo;
}

std::size_t cohomology_rank(const LinearMapRep& d_in, const LinearMapRep& d_out) {
  if (d_in.rows() != d_out.cols()) throw InvalidInput("differentials are not composable");
  for (const auto& col : d_in.columns)
    if (!d_out.apply(col).empty()) throw InvalidInput("d_out o d_in is not zero");
  return d_out.cols() - rank(d_out) - rank(d_in);
}

}  // namespace cylop
