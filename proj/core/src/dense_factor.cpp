#include "mgssp/dense_factor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "mgssp/error.hpp"

namespace mgssp {

DenseMatrix LUFactors::lower() const {
  const std::size_t n = size();
  DenseMatrix l = DenseMatrix::identity(n);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) l(i, j) = packed(i, j);
  return l;
}

DenseMatrix LUFactors::upper() const {
  const std::size_t n = size();
  DenseMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) u(i, j) = packed(i, j);
  return u;
}

LUFactors lu_factor(DenseMatrix m) {
  if (!m.square()) throw Error(ErrorCode::InvalidDimension, "lu_factor requires a square matrix");
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double a = std::abs(m(i, k));
      if (a > best) {
        best = a;
        piv = i;
      }
    }
    if (best == 0.0) throw Error(ErrorCode::SingularMatrix, "zero pivot column in LU factorization");
    if (piv != k) {
      std::swap_ranges(m.row(k).begin(), m.row(k).end(), m.row(piv).begin());
      std::swap(perm[k], perm[piv]);
    }
    const double inv = 1.0 / m(k, k);
    const auto rk = m.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      auto ri = m.row(i);
      const double l = ri[k] * inv;
      ri[k] = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= l * rk[j];
    }
  }
  return {std::move(m), std::move(perm)};
}

Vector lu_solve(const LUFactors& f, std::span<const double> b) {
  const std::size_t n = f.size();
  if (b.size() != n) throw Error(ErrorCode::InvalidDimension, "lu_solve: rhs length mismatch");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i) {
    const auto ri = f.packed.row(i);
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= ri[j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    const auto ri = f.packed.row(i);
    if (ri[i] == 0.0) throw Error(ErrorCode::SingularMatrix, "lu_solve: zero diagonal in U");
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= ri[j] * x[j];
    x[i] = s / ri[i];
  }
  return x;
}

CholFactors chol_factor(const DenseMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::InvalidDimension, "chol_factor requires a square matrix");
  if (asymmetry(m) > 1e-12) throw Error(ErrorCode::InvalidInput, "chol_factor: matrix is not symmetric");
  const std::size_t n = m.rows();
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto lj = l.row(j);
    double d = m(j, j) - dot(lj.subspan(0, j), lj.subspan(0, j));
    if (!(d > 0.0)) throw Error(ErrorCode::NotPositiveDefinite, "non-positive Cholesky pivot");
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      const auto li = l.row(i);
      l(i, j) = (m(i, j) - dot(li.subspan(0, j), lj.subspan(0, j))) / ljj;
    }
  }
  return {std::move(l)};
}

Vector chol_solve(const CholFactors& f, std::span<const double> b) {
  const std::size_t n = f.size();
  if (b.size() != n) throw Error(ErrorCode::InvalidDimension, "chol_solve: rhs length mismatch");
  Vector x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    const auto li = f.lower.row(i);
    x[i] = (x[i] - dot(li.subspan(0, i), std::span<const double>(x).subspan(0, i))) / li[i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= f.lower(j, i) * x[j];
    x[i] = s / f.lower(i, i);
  }
  return x;
}

std::size_t numerical_rank(DenseMatrix m, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidParameter, "numerical_rank: tol must be positive");
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const double threshold = tol * m.max_abs();
  if (m.empty() || threshold == 0.0) return 0;

  std::vector<std::size_t> colperm(cols);
  std::iota(colperm.begin(), colperm.end(), std::size_t{0});
  const std::size_t steps = std::min(rows, cols);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t pr = k;
    std::size_t pc = k;
    double best = 0.0;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        const double a = std::abs(m(i, j));
        if (a > best) {
          best = a;
          pr = i;
          pc = j;
        }
      }
    if (best <= threshold) break;
    ++rank;
    if (pr != k) std::swap_ranges(m.row(k).begin(), m.row(k).end(), m.row(pr).begin());
    if (pc != k) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, k), m(i, pc));
      std::swap(colperm[k], colperm[pc]);
    }
    const double inv = 1.0 / m(k, k);
    const auto rk = m.row(k);
    for (std::size_t i = k + 1; i < rows; ++i) {
      auto ri = m.row(i);
      const double l = ri[k] * inv;
      if (l == 0.0) continue;
      ri[k] = 0.0;
      for (std::size_t j = k + 1; j < cols; ++j) ri[j] -= l * rk[j];
    }
  }
  return rank;
}

}  // namespace mgssp
