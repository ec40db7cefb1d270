#pragma once

// Exact linear algebra over Q. Rank uses fraction-free (Bareiss) elimination
// with first-nonzero pivoting; kernels and solves use rational RREF.

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "stringtop/rational.hpp"

namespace stringtop {

using DenseVector = std::vector<Rational>;
using DenseMatrix = std::vector<DenseVector>;  // row-major

DenseMatrix zero_matrix(std::size_t rows, std::size_t cols);
DenseMatrix identity_matrix(std::size_t n);
/// (a.size() × inner) · (inner × cols); dimensions are explicit so empty
/// factors keep their shape.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b, std::size_t inner, std::size_t cols);
bool is_zero(const DenseMatrix& m);

/// Sparse matrix; explicit zeros are never stored.
class SparseMatrix {
 public:
  using Entries = std::map<std::pair<std::size_t, std::size_t>, Rational>;

  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Entries& entries() const { return entries_; }

  void set(std::size_t r, std::size_t c, const Rational& v);
  void add(std::size_t r, std::size_t c, const Rational& v);
  Rational at(std::size_t r, std::size_t c) const;

  DenseMatrix to_dense() const;
  DenseVector column(std::size_t c) const;

 private:
  std::size_t rows_, cols_;
  Entries entries_;
};

/// Fraction-free rank. Rows are scaled to integers first.
std::size_t bareiss_rank(const DenseMatrix& m);
std::size_t rank(const SparseMatrix& m);

/// Reduces `m` in place to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(DenseMatrix& m, std::size_t cols);

/// Basis of {x : A x = 0}, one vector per free column in increasing order.
std::vector<DenseVector> kernel_basis(const DenseMatrix& a, std::size_t cols);

/// Solves A X = B (A is rows×cols, B is rows×k). Free variables are set to
/// zero. Returns nullopt when the system is inconsistent.
std::optional<DenseMatrix> solve(const DenseMatrix& a, std::size_t cols, const DenseMatrix& b,
                                 std::size_t k);

/// Growing span of vectors kept in echelon form.
class IncrementalSpan {
 public:
  explicit IncrementalSpan(std::size_t dimension) : dimension_(dimension) {}

  /// Adds `v` and returns true when it was independent of the span.
  bool insert(DenseVector v);
  bool contains(DenseVector v) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(DenseVector& v) const;

  std::size_t dimension_;
  std::vector<std::pair<std::size_t, DenseVector>> rows_;  // (pivot, row with 1 at pivot)
};

}  // namespace stringtop
