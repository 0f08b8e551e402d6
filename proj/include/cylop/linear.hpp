#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cylop {

using Scalar = mpq_class;

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parses "p", "p/q" or "-p/q"; result is canonicalized.
Scalar parse_scalar(const std::string& text);
std::string to_string(const Scalar& q);

using SparseVector = std::map<int, Scalar>;

// y += a * x, dropping entries that cancel.
void axpy(SparseVector& y, const Scalar& a, const SparseVector& x);
bool is_zero(const SparseVector& v);

struct BasisEntry {
  std::string label;
  int degree = 0;
};

class GradedBasis {
 public:
  GradedBasis() = default;
  explicit GradedBasis(std::vector<BasisEntry> entries);
  // Anonymous basis e0..e{n-1}, all in the given degree.
  static GradedBasis anonymous(std::size_t n, int degree = 0);

  std::size_t size() const { return entries_.size(); }
  const BasisEntry& operator[](std::size_t i) const { return entries_[i]; }
  int degree(std::size_t i) const { return entries_[i].degree; }
  std::optional<std::size_t> find(const std::string& label) const;
  const std::vector<BasisEntry>& entries() const { return entries_; }

 private:
  std::vector<BasisEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

struct LinearMapRep {
  GradedBasis source;
  GradedBasis target;
  int shift = 0;
  std::vector<SparseVector> columns;  // columns[c] is sparse over target rows

  LinearMapRep() = default;
  LinearMapRep(GradedBasis src, GradedBasis tgt, int shift_);

  // Dense convenience constructor over anonymous degree-0 bases.
  static LinearMapRep from_rows(const std::vector<std::vector<Scalar>>& rows,
                                std::size_t ncols);

  std::size_t rows() const { return target.size(); }
  std::size_t cols() const { return source.size(); }
  void set(std::size_t r, std::size_t c, const Scalar& v);
  Scalar at(std::size_t r, std::size_t c) const;
  SparseVector apply(const SparseVector& v) const;
  // Entries violating the degree constraint, as (row, col) pairs.
  std::vector<std::pair<std::size_t, std::size_t>> degree_violations() const;
};

LinearMapRep compose(const LinearMapRep& outer, const LinearMapRep& inner);

// Row space in reduced echelon form keyed by pivot (the smallest index of
// each stored row). Optionally tracks, for every stored row, the
// combination of inserted vectors producing it.
class Echelon {
 public:
  explicit Echelon(bool track_history = false) : track_(track_history) {}

  // Inserts v with history tag `tag`; returns true when v was independent.
  bool insert(const SparseVector& v, int tag = -1);
  // Reduces v; when history is tracked, `combo` receives coefficients c
  // with v - sum c_t * inserted_t = remainder.
  SparseVector reduce(SparseVector v, SparseVector* combo = nullptr) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }
  // Vectors that reduced to zero on insertion, expressed as combinations.
  const std::vector<SparseVector>& relations() const { return relations_; }

 private:
  struct Row {
    SparseVector v;
    SparseVector history;
  };
  bool track_;
  std::map<int, Row> rows_;
  std::vector<SparseVector> relations_;
};

int koszul_parity(const std::vector<int>& order, const std::vector<int>& degrees);
// Permutation is 1-based: the factors are reordered to
// (x_{p_1}, ..., x_{p_m}).
Scalar koszul_sign(const std::vector<int>& permutation, const std::vector<int>& degrees);

std::size_t rank(const LinearMapRep& map);
std::vector<SparseVector> kernel_basis(const LinearMapRep& map);
std::optional<SparseVector> solve_affine(const LinearMapRep& map, const SparseVector& rhs);
std::size_t cohomology_rank(const LinearMapRep& d_in, const LinearMapRep& d_out);

// Rank of a list of sparse vectors.
std::size_t rank_of(const std::vector<SparseVector>& vectors);

}  // namespace cylop
