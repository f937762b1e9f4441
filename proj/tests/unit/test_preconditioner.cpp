#include <gtest/gtest.h>

#include "mgssp/error.hpp"
#include "mgssp/preconditioner.hpp"
#include "oracle.hpp"

using namespace mgssp;

namespace {

SaddlePointSystem scalar_system() {
  SaddlePointSystem s;
  s.A = SparseMatrix::identity(1);
  s.B = SparseMatrix::identity(1);
  const auto r = rhs_for_ones(s.A, s.B);
  s.f = r.f;
  s.g = r.g;
  return s;
}

// P from the family display, built without the library: s * [[F, t B], [-t B^T, beta I]].
oracle::Rows family_p(const SaddlePointSystem& sys, FamilyKind kind, ShiftParams prm) {
  const auto a = oracle::rows_of(sys.A);
  const auto b = oracle::rows_of(sys.B);
  const std::size_t m = sys.m(), n = sys.n();
  const bool tied = kind == FamilyKind::SS || kind == FamilyKind::MSS || kind == FamilyKind::MSSP;
  const long double alpha = prm.alpha, beta = tied ? prm.alpha : prm.beta;
  const bool half = kind == FamilyKind::SS || kind == FamilyKind::GSS || kind == FamilyKind::MSS ||
                    kind == FamilyKind::GMSS;
  const long double s = half ? 0.5L : 1.0L, t = half ? 1.0L : 2.0L;
  oracle::Rows p(m + n, std::vector<long double>(m + n, 0.0L));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      long double fij = 0;
      switch (kind) {
        case FamilyKind::SS:
        case FamilyKind::GSS: fij = a[i][j]; break;
        case FamilyKind::MSS:
        case FamilyKind::GMSS: fij = a[i][j] + a[j][i]; break;
        default: fij = 2 * a[i][j];
      }
      p[i][j] = s * (fij + (i == j ? alpha : 0.0L));
    }
    for (std::size_t j = 0; j < n; ++j) {
      p[i][m + j] = s * t * b[i][j];
      p[m + j][i] = -s * t * b[i][j];
    }
  }
  for (std::size_t j = 0; j < n; ++j) p[m + j][m + j] = s * beta;
  return p;
}

double max_diff(const DenseMatrix& m, const oracle::Rows& r) {
  double d = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - static_cast<double>(r[i][j])));
  return d;
}

}  // namespace

TEST(FamilyKind, DescriptorTable) {
  EXPECT_EQ(describe(FamilyKind::SS).scale, 0.5);
  EXPECT_EQ(describe(FamilyKind::GMSS).first_block, FirstBlock::ShiftTwoH);
  EXPECT_EQ(describe(FamilyKind::MGSSP).coupling, 2.0);
  EXPECT_EQ(describe(FamilyKind::MGSSP).scale, 1.0);
  EXPECT_TRUE(describe(FamilyKind::MSSP).ties_beta_to_alpha);
  EXPECT_FALSE(describe(FamilyKind::GSS).ties_beta_to_alpha);
  EXPECT_EQ(parse_kind("mgssp"), FamilyKind::MGSSP);
  EXPECT_EQ(parse_kind("Gmss"), FamilyKind::GMSS);
  EXPECT_EQ(parse_kind("bogus"), std::nullopt);
  for (auto k : kAllKinds) EXPECT_EQ(parse_kind(to_string(k)), k);
}

TEST(ShiftParams, Validation) {
  EXPECT_NO_THROW((ShiftParams{0.0, 0.1}.validate()));
  EXPECT_THROW((ShiftParams{-1.0, 1.0}.validate()), Error);
  EXPECT_THROW((ShiftParams{1.0, 0.0}.validate()), Error);
  EXPECT_THROW((ShiftParams{std::nan(""), 1.0}.validate()), Error);
  EXPECT_EQ((ShiftParams{2.0, 5.0}.effective(FamilyKind::SS).beta), 2.0);
  EXPECT_EQ((ShiftParams{2.0, 5.0}.effective(FamilyKind::GSS).beta), 5.0);
}

TEST(Build, ScalarInnerMatrices) {
  const auto s = scalar_system();
  EXPECT_EQ(build(FamilyKind::MGSSP, s, {1, 1}).inner_matrix(), DenseMatrix::from_rows({{7}}));
  EXPECT_EQ(build(FamilyKind::SS, s, {2, 123}).inner_matrix(), DenseMatrix::from_rows({{3.5}}));
}

TEST(Build, ModifiedKindsUseCholeskyOnSymmetricPart) {
  SaddlePointSystem s;
  s.A = SparseMatrix::from_triplets(2, 2, {{0, 0, 2}, {0, 1, 1}, {1, 0, 3}, {1, 1, 2}});
  s.B = SparseMatrix::from_triplets(2, 1, {{0, 0, 1}});
  const auto r = rhs_for_ones(s.A, s.B);
  s.f = r.f;
  s.g = r.g;
  const auto pc = build(FamilyKind::MSS, s, {1, 1});
  EXPECT_TRUE(pc.uses_cholesky());
  // alpha I + 2H + (1/alpha) B B^T with 2H = [[4,4],[4,4]].
  EXPECT_EQ(pc.inner_matrix(), DenseMatrix::from_rows({{6, 4}, {4, 5}}));
  EXPECT_FALSE(build(FamilyKind::MGSSP, s, {1, 1}).uses_cholesky());
}

TEST(Apply, ZeroMapsToZero) {
  const auto s = build_example1(3, 1.0);
  const Vector zero(s.size(), 0.0);
  for (auto k : kAllKinds) EXPECT_EQ(build(k, s, {0.7, 1.3}).apply(zero), zero);
}

TEST(Apply, ScalarHandSolve) {
  const auto z = build(FamilyKind::MGSSP, scalar_system(), {1, 1}).apply(Vector{7, 0});
  EXPECT_DOUBLE_EQ(z[0], 1.0);
  EXPECT_DOUBLE_EQ(z[1], 2.0);
}

TEST(Apply, InvertsAssembledPOnExample1) {
  const auto s = build_example1(4, 1.0);
  const auto r = oracle::random_vector(s.size(), 42);
  for (auto k : kAllKinds) {
    const auto pc = build(k, s, {0.6, 0.8});
    const auto z = pc.apply(r);
    const auto pz = matvec(pc.assemble_P(), z);
    double err = 0;
    for (std::size_t i = 0; i < r.size(); ++i) err += (pz[i] - r[i]) * (pz[i] - r[i]);
    EXPECT_LE(std::sqrt(err), 1e-10 * oracle::norm(r)) << to_string(k);
  }
}

TEST(Apply, MatchesExtendedPrecisionDenseSolve) {
  const auto s = build_example2(4, 0.1);
  const auto r = oracle::random_vector(s.size(), 9);
  for (auto k : kAllKinds) {
    const ShiftParams prm{0.5, 2.0};
    const auto z = build(k, s, prm).apply(r);
    const auto ref = oracle::solve(family_p(s, k, prm), r);
    EXPECT_LE(oracle::max_diff(z, ref), 1e-9) << to_string(k);
  }
}

TEST(Apply, DimensionMismatch) {
  try {
    (void)build(FamilyKind::MGSSP, scalar_system(), {1, 1}).apply(Vector{1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidDimension);
  }
}

TEST(AssembleP, MatchesFamilyDisplays) {
  const auto s = build_example1(3, 0.5);
  for (auto k : kAllKinds) {
    const ShiftParams prm{0.6, 0.8};
    EXPECT_LE(max_diff(build(k, s, prm).assemble_P(), family_p(s, k, prm)), 1e-12) << to_string(k);
  }
}

TEST(AssembleQ, ScalarValues) {
  const auto s = scalar_system();
  const auto pc = build(FamilyKind::MGSSP, s, {1, 1});
  EXPECT_EQ(pc.assemble_P(), DenseMatrix::from_rows({{3, 2}, {-2, 1}}));
  EXPECT_EQ(pc.assemble_Q(s), DenseMatrix::from_rows({{2, 1}, {-1, 1}}));
}

TEST(AssembleQ, SplittingRecoversSaddleMatrix) {
  const auto s = build_example1(4, 0.1);
  const auto pc = build(FamilyKind::MGSSP, s, {1.3, 0.7});
  const auto diff = add(pc.assemble_P(), pc.assemble_Q(s), 1.0, -1.0);
  const auto ref = oracle::saddle(s);
  const auto pmax = pc.assemble_P().max_abs();
  EXPECT_LE(max_diff(diff, ref), 4 * std::numeric_limits<double>::epsilon() * pmax);
  // Q for the MGSSP kind is [[alpha I + A, B], [-B^T, beta I]].
  const auto q = pc.assemble_Q(s);
  const auto a = to_dense(s.A);
  for (std::size_t i = 0; i < s.m(); ++i)
    for (std::size_t j = 0; j < s.m(); ++j)
      EXPECT_NEAR(q(i, j), a(i, j) + (i == j ? 1.3 : 0.0), 1e-12 * pmax);
  for (std::size_t j = 0; j < s.n(); ++j) EXPECT_NEAR(q(s.m() + j, s.m() + j), 0.7, 1e-12);
}

TEST(AssembleP, BlockFactorizationIdentity) {
  const auto s = build_example1(4, 1.0);
  const double alpha = 0.9, beta = 1.7;
  const auto pc = build(FamilyKind::MGSSP, s, {alpha, beta});
  const std::size_t m = s.m(), n = s.n(), N = m + n;
  const auto b = oracle::rows_of(s.B);
  const auto a = oracle::rows_of(s.A);
  oracle::Rows upper(N, std::vector<long double>(N, 0.0L)), mid = upper, lower = upper;
  for (std::size_t i = 0; i < N; ++i) upper[i][i] = lower[i][i] = 1.0L;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      upper[i][m + j] = 2.0L / beta * b[i][j];
      lower[m + j][i] = -2.0L / beta * b[i][j];
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      long double bbt = 0;
      for (std::size_t k = 0; k < n; ++k) bbt += b[i][k] * b[j][k];
      mid[i][j] = (i == j ? alpha : 0.0L) + 2 * a[i][j] + 4.0L / beta * bbt;
    }
  for (std::size_t j = 0; j < n; ++j) mid[m + j][m + j] = beta;
  const auto prod = oracle::matmul(oracle::matmul(upper, mid), lower);
  const auto p = pc.assemble_P();
  EXPECT_LE(max_diff(p, prod), 1e-12 * p.max_abs());
}

TEST(Apply, TiedAndSpecialCasesAgree) {
  const auto s = build_example1(4, 0.1);
  const auto r = oracle::random_vector(s.size(), 3);
  const auto mssp = build(FamilyKind::MSSP, s, {0.8, 99}).apply(r);
  const auto mgssp = build(FamilyKind::MGSSP, s, {0.8, 0.8}).apply(r);
  const auto ss = build(FamilyKind::SS, s, {1.1, 99}).apply(r);
  const auto gss = build(FamilyKind::GSS, s, {1.1, 1.1}).apply(r);
  const double scale = oracle::norm(r);
  EXPECT_LE(oracle::max_diff(mssp, mgssp), 1e-14 * scale);
  EXPECT_LE(oracle::max_diff(ss, gss), 1e-14 * scale);
}
