#include <gtest/gtest.h>

#include <cmath>

#include "mgssp/dense_factor.hpp"
#include "mgssp/error.hpp"
#include "oracle.hpp"

using namespace mgssp;

namespace {

DenseMatrix permuted(const DenseMatrix& m, const std::vector<std::size_t>& perm) {
  DenseMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(perm[i], j);
  return out;
}

DenseMatrix random_matrix(std::size_t n, unsigned seed, double diag_boost) {
  const auto v = oracle::random_vector(n * n, seed);
  DenseMatrix m(n, n, v);
  for (std::size_t i = 0; i < n; ++i) m(i, i) += diag_boost;
  return m;
}

}  // namespace

TEST(LuFactor, Identity) {
  const auto f = lu_factor(DenseMatrix::identity(3));
  EXPECT_EQ(f.lower(), DenseMatrix::identity(3));
  EXPECT_EQ(f.upper(), DenseMatrix::identity(3));
  EXPECT_EQ(f.perm, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(LuFactor, ForcedPivot) {
  const auto f = lu_factor(DenseMatrix::from_rows({{0, 1}, {1, 0}}));
  EXPECT_EQ(f.perm, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(f.lower(), DenseMatrix::identity(2));
  EXPECT_EQ(f.upper(), DenseMatrix::identity(2));
}

TEST(LuFactor, HandElimination) {
  const auto f = lu_factor(DenseMatrix::from_rows({{4, 3}, {6, 3}}));
  EXPECT_EQ(f.perm, (std::vector<std::size_t>{1, 0}));
  const auto l = f.lower(), u = f.upper();
  EXPECT_DOUBLE_EQ(l(1, 0), 2.0 / 3.0);
  EXPECT_EQ(l(0, 0), 1.0);
  EXPECT_EQ(l(0, 1), 0.0);
  EXPECT_EQ(u(0, 0), 6.0);
  EXPECT_EQ(u(0, 1), 3.0);
  EXPECT_EQ(u(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(u(1, 1), 1.0);
}

TEST(LuFactor, ReconstructsPermutedMatrix) {
  const auto m = random_matrix(40, 7, 0.0);
  const auto f = lu_factor(m);
  const auto lu = matmul(f.lower(), f.upper());
  EXPECT_LE(max_abs_diff(lu, permuted(m, f.perm)), 1e-12 * m.max_abs());
}

TEST(LuFactor, SingularColumnThrows) {
  try {
    (void)lu_factor(DenseMatrix::from_rows({{1, 0}, {2, 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
}

TEST(LuSolve, Examples) {
  EXPECT_EQ(lu_solve(lu_factor(DenseMatrix::identity(3)), Vector{1, 2, 3}), (Vector{1, 2, 3}));
  EXPECT_EQ(lu_solve(lu_factor(DenseMatrix::from_rows({{2, 0}, {0, 4}})), Vector{2, 4}), (Vector{1, 1}));
  const auto x = lu_solve(lu_factor(DenseMatrix::from_rows({{4, 3}, {6, 3}})), Vector{7, 9});
  EXPECT_NEAR(x[0], 1.0, 1e-15);
  EXPECT_NEAR(x[1], 1.0, 1e-15);
}

TEST(LuSolve, AgreesWithExtendedPrecisionOracle) {
  const auto m = random_matrix(30, 11, 3.0);
  const auto b = oracle::random_vector(30, 12);
  const auto x = lu_solve(lu_factor(m), b);
  const auto ref = oracle::solve(oracle::rows_of(m), b);
  EXPECT_LE(oracle::max_diff(x, ref), 1e-12);
  const auto r = matvec(m, x);
  double res = 0;
  for (std::size_t i = 0; i < r.size(); ++i) res = std::max(res, std::abs(r[i] - b[i]));
  EXPECT_LE(res, 1e-10 * (m.max_abs() * oracle::norm(x) + oracle::norm(b)));
}

TEST(LuSolve, DimensionMismatch) {
  EXPECT_THROW((void)lu_solve(lu_factor(DenseMatrix::identity(2)), Vector{1, 2, 3}), Error);
}

TEST(CholFactor, Examples) {
  EXPECT_EQ(chol_factor(DenseMatrix::identity(2)).lower, DenseMatrix::identity(2));
  EXPECT_EQ(chol_factor(DenseMatrix::from_rows({{4, 0}, {0, 9}})).lower, DenseMatrix::from_rows({{2, 0}, {0, 3}}));
  EXPECT_EQ(chol_factor(DenseMatrix::from_rows({{4, 2}, {2, 5}})).lower, DenseMatrix::from_rows({{2, 0}, {1, 2}}));
}

TEST(CholFactor, Errors) {
  try {
    (void)chol_factor(DenseMatrix::from_rows({{1, 2}, {2, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
  }
  try {
    (void)chol_factor(DenseMatrix::from_rows({{4, 1}, {2, 5}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
}

TEST(CholSolve, MatchesOracleOnSpdMatrix) {
  const auto g = random_matrix(25, 3, 0.0);
  DenseMatrix spd = matmul(g.transpose(), g);
  for (std::size_t i = 0; i < 25; ++i) spd(i, i) += 1.0;
  const auto b = oracle::random_vector(25, 4);
  const auto f = chol_factor(spd);
  EXPECT_LE(max_abs_diff(matmul(f.lower, f.lower.transpose()), spd), 1e-12 * spd.max_abs());
  EXPECT_LE(oracle::max_diff(chol_solve(f, b), oracle::solve(oracle::rows_of(spd), b)), 1e-11);
}

TEST(NumericalRank, Examples) {
  EXPECT_EQ(numerical_rank(DenseMatrix::identity(3), 1e-10), 3u);
  EXPECT_EQ(numerical_rank(DenseMatrix(4, 4), 1e-10), 0u);
  EXPECT_EQ(numerical_rank(DenseMatrix::from_rows({{1, 2}, {2, 4}}), 1e-10), 1u);
  EXPECT_EQ(numerical_rank(DenseMatrix(), 1e-10), 0u);
}

TEST(NumericalRank, RectangularLowRankProduct) {
  const DenseMatrix u(6, 2, oracle::random_vector(12, 5));
  const DenseMatrix v(2, 4, oracle::random_vector(8, 6));
  EXPECT_EQ(numerical_rank(matmul(u, v), 1e-10), 2u);
}
