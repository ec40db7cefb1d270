#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "stringtop/homology.hpp"
#include "stringtop/linalg.hpp"

using namespace stringtop;

namespace {

Rational canonical(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

DenseMatrix from_ints(const std::vector<std::vector<long>>& rows) {
  DenseMatrix m;
  for (const auto& r : rows) {
    DenseVector v;
    for (long x : r) v.emplace_back(x);
    m.push_back(v);
  }
  return m;
}

// Independent oracle: plain Gaussian elimination with rational pivots,
// choosing the last nonzero row as pivot.
std::size_t oracle_rank(DenseMatrix m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = m.size();
    for (std::size_t i = r; i < m.size(); ++i)
      if (m[i][c] != 0) p = i;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

SparseMatrix to_sparse(const DenseMatrix& d, std::size_t cols) {
  SparseMatrix s(d.size(), cols);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) s.set(i, j, d[i][j]);
  return s;
}

}  // namespace

TEST(MatrixRank, Examples) {
  EXPECT_EQ(rank(SparseMatrix(3, 4)), 0u);
  EXPECT_EQ(bareiss_rank(identity_matrix(5)), 5u);
  const auto m = from_ints({{1, 2, 3}, {2, 4, 6}});
  EXPECT_EQ(bareiss_rank(m), 1u);
  EXPECT_EQ(oracle_rank(m), 1u);
  RationalMatrixSlice slice{{}, {}, to_sparse(m, 3)};
  EXPECT_EQ(matrix_rank(slice), 1u);
}

TEST(MatrixRank, NoStoredZeros) {
  SparseMatrix s(2, 2);
  s.set(0, 0, 3);
  s.set(0, 0, 0);
  s.add(1, 1, 2);
  s.add(1, 1, -2);
  EXPECT_TRUE(s.entries().empty());
}

TEST(MatrixRank, AgreesWithOracleAndIgnoresPermutation) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> dim(1, 7), val(-3, 3), den(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = dim(rng), cols = dim(rng);
    // Low-rank products make dependent rows common.
    const std::size_t inner = 1 + trial % 4;
    auto a = zero_matrix(rows, inner), b = zero_matrix(inner, cols);
    for (auto& r : a)
      for (auto& x : r) x = canonical(val(rng), den(rng));
    for (auto& r : b)
      for (auto& x : r) x = canonical(val(rng), den(rng));
    auto m = matmul(a, b, inner, cols);
    const auto want = oracle_rank(m);
    ASSERT_EQ(bareiss_rank(m), want);

    std::vector<std::size_t> rp(rows), cp(cols);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    auto p = zero_matrix(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) p[i][j] = m[rp[i]][cp[j]];
    EXPECT_EQ(rank(to_sparse(p, cols)), want);
  }
}

TEST(Linalg, KernelAndSolve) {
  const auto a = from_ints({{1, 2, 3}, {2, 4, 6}});
  const auto k = kernel_basis(a, 3);
  ASSERT_EQ(k.size(), 2u);
  for (const auto& v : k)
    for (const auto& row : a) EXPECT_EQ(row[0] * v[0] + row[1] * v[1] + row[2] * v[2], 0);

  const auto b = from_ints({{6}, {12}});
  auto x = solve(a, 3, b, 1);
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0][0] + 2 * (*x)[1][0] + 3 * (*x)[2][0], 6);
  EXPECT_FALSE(solve(a, 3, from_ints({{1}, {1}}), 1));
}

TEST(Linalg, IncrementalSpan) {
  IncrementalSpan s(3);
  EXPECT_TRUE(s.insert({1, 1, 0}));
  EXPECT_TRUE(s.insert({0, 1, 1}));
  EXPECT_FALSE(s.insert({1, 2, 1}));
  EXPECT_TRUE(s.contains({2, 0, -2}));
  EXPECT_FALSE(s.contains({0, 0, 1}));
  EXPECT_EQ(s.rank(), 2u);
}
