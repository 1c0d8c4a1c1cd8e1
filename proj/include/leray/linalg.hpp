#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace leray {

using Q = mpq_class;
using Z = mpz_class;

// Dense rational matrix, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
  static QMatrix identity(int n);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Q& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Q& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  QMatrix operator*(const QMatrix& o) const;
  QMatrix transpose() const;
  bool operator==(const QMatrix& o) const;
  bool is_zero() const;
  std::string str() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<Q> a_;
};

using SparseVec = std::map<int, Q>;  // column -> nonzero value

// Rank by fraction-free (integer) elimination.
int rank(const QMatrix& m);
int rank_sparse(const std::vector<SparseVec>& rows);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMatrix& m);
std::vector<std::vector<Q>> kernel_basis(const QMatrix& m);
// Some x with m x = b, if one exists.
bool solve(const QMatrix& m, const std::vector<Q>& b, std::vector<Q>* x);

// Incremental echelon form over Q. Pivots are leading (smallest) columns, so
// ordering columns from largest to smallest monomial makes the non-pivot
// columns the standard monomials.
class Echelon {
 public:
  // Returns true if the row was independent of the rows seen so far.
  bool add(SparseVec v);
  SparseVec reduce(SparseVec v) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  bool is_pivot(int c) const { return rows_.count(c) > 0; }
  const std::map<int, SparseVec>& rows() const { return rows_; }

 private:
  std::map<int, SparseVec> rows_;  // pivot -> row with leading coefficient 1
};

// Same over Z with content normalisation; rank only.
class IntEchelon {
 public:
  bool add(std::vector<std::pair<int, Z>> row);
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  std::map<int, std::vector<std::pair<int, Z>>> rows_;
};

std::vector<std::pair<int, Z>> integerize(const SparseVec& v);

// Sparse elimination over Z/p. The rank of a matrix over Z_(p) can only drop
// mod p, so this is a lower bound for the rational rank.
constexpr std::uint32_t kPrime = 2147483647u;
using ModRow = std::vector<std::pair<int, std::uint32_t>>;  // sorted by column
std::uint32_t to_mod_p(const Q& q, std::uint32_t p = kPrime);
int rank_mod_p(std::vector<ModRow> rows, std::uint32_t p = kPrime);

}  // namespace leray
