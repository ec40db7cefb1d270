#include "stringtop/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace stringtop {

DenseMatrix zero_matrix(std::size_t rows, std::size_t cols) {
  return DenseMatrix(rows, DenseVector(cols, Rational(0)));
}

DenseMatrix identity_matrix(std::size_t n) {
  auto m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b, std::size_t inner, std::size_t cols) {
  auto out = zero_matrix(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

bool is_zero(const DenseMatrix& m) {
  for (const auto& row : m)
    for (const auto& v : row)
      if (v != 0) return false;
  return true;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix index");
  if (v == 0)
    entries_.erase({r, c});
  else
    entries_[{r, c}] = v;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) { set(r, c, at(r, c) + v); }

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Rational(0) : it->second;
}

DenseMatrix SparseMatrix::to_dense() const {
  auto m = zero_matrix(rows_, cols_);
  for (const auto& [rc, v] : entries_) m[rc.first][rc.second] = v;
  return m;
}

DenseVector SparseMatrix::column(std::size_t c) const {
  DenseVector v(rows_, Rational(0));
  for (const auto& [rc, x] : entries_)
    if (rc.second == c) v[rc.first] = x;
  return v;
}

std::size_t bareiss_rank(const DenseMatrix& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    Integer l = 1;
    for (const auto& q : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j].get_num() * (l / m[i][j].get_den());
  }
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::size_t rank(const SparseMatrix& m) {
  if (m.entries().empty()) return 0;
  return bareiss_rank(m.to_dense());
}

std::vector<std::size_t> rref(DenseMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<DenseVector> kernel_basis(const DenseMatrix& a, std::size_t cols) {
  DenseMatrix m = a;
  const auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<DenseVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    DenseVector x(cols, Rational(0));
    x[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m[r][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<DenseMatrix> solve(const DenseMatrix& a, std::size_t cols, const DenseMatrix& b,
                                 std::size_t k) {
  DenseMatrix aug(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    aug[i] = a[i];
    aug[i].resize(cols, Rational(0));
    aug[i].insert(aug[i].end(), b[i].begin(), b[i].end());
  }
  const auto pivots = rref(aug, cols);
  for (std::size_t i = pivots.size(); i < aug.size(); ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (aug[i][cols + j] != 0) return std::nullopt;
  auto x = zero_matrix(cols, k);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t j = 0; j < k; ++j) x[pivots[r]][j] = aug[r][cols + j];
  return x;
}

void IncrementalSpan::reduce(DenseVector& v) const {
  for (const auto& [p, row] : rows_) {
    if (v[p] == 0) continue;
    const Rational f = v[p];
    for (std::size_t j = 0; j < dimension_; ++j)
      if (row[j] != 0) v[j] -= f * row[j];
  }
}

bool IncrementalSpan::insert(DenseVector v) {
  if (v.size() != dimension_) throw std::invalid_argument("IncrementalSpan dimension mismatch");
  reduce(v);
  auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
  if (it == v.end()) return false;
  const std::size_t p = static_cast<std::size_t>(it - v.begin());
  const Rational inv = 1 / v[p];
  for (auto& x : v) x *= inv;
  rows_.emplace_back(p, std::move(v));
  return true;
}

bool IncrementalSpan::contains(DenseVector v) const {
  if (v.size() != dimension_) throw std::invalid_argument("IncrementalSpan dimension mismatch");
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace stringtop
