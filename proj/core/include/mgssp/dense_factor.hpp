#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgssp/dense.hpp"

namespace mgssp {

/// PM = LU with partial pivoting. L (unit diagonal) and U share `packed`;
/// row i of PM is row perm[i] of M.
struct LUFactors {
  DenseMatrix packed;
  std::vector<std::size_t> perm;

  [[nodiscard]] std::size_t size() const noexcept { return packed.rows(); }
  [[nodiscard]] DenseMatrix lower() const;
  [[nodiscard]] DenseMatrix upper() const;
};

/// M = L L^T, L lower triangular with positive diagonal.
struct CholFactors {
  DenseMatrix lower;

  [[nodiscard]] std::size_t size() const noexcept { return lower.rows(); }
};

LUFactors lu_factor(DenseMatrix m);
Vector lu_solve(const LUFactors& f, std::span<const double> b);

/// Symmetry is checked to 1e-12 relative to max|m_ij|.
CholFactors chol_factor(const DenseMatrix& m);
Vector chol_solve(const CholFactors& f, std::span<const double> b);

/// Number of complete-pivoting elimination pivots larger than
/// tol * max|m_ij|. An empty or all-zero matrix has rank 0.
std::size_t numerical_rank(DenseMatrix m, double tol);

}  // namespace mgssp
