#pragma once

#include <cstddef>
#include <span>

#include "mgssp/sparse.hpp"

namespace mgssp {

/// [[A, B], [-B^T, 0]] (x; y) = (f; -g) with A m-by-m and B m-by-n, n <= m.
struct SaddlePointSystem {
  SparseMatrix A;
  SparseMatrix B;
  Vector f;
  Vector g;

  [[nodiscard]] std::size_t m() const noexcept { return A.rows(); }
  [[nodiscard]] std::size_t n() const noexcept { return B.cols(); }
  [[nodiscard]] std::size_t size() const noexcept { return m() + n(); }

  /// Right-hand side of the block system, (f; -g).
  [[nodiscard]] Vector rhs() const;
  /// The saddle-point operator applied to u = (x; y).
  [[nodiscard]] Vector apply(std::span<const double> u) const;
  /// Throws on shape inconsistency, n > m, or a failed probabilistic
  /// positive-definiteness probe of A (20 random unit vectors, fixed seed).
  void validate() const;
};

/// Finite-difference grid parameters: p interior points per direction,
/// viscosity v, mesh size h = 1/(p+1).
struct ProblemParams {
  std::size_t p;
  double v;

  [[nodiscard]] double h() const noexcept { return 1.0 / static_cast<double>(p + 1); }
};

/// T = (v/h^2) tridiag(-1,2,-1) + (1/2h) tridiag(-1,0,1), the 1-D
/// convection-diffusion stencil.
SparseMatrix convection_diffusion_1d(const ProblemParams& params);

/// F = (1/h) tridiag(-1,1,0).
SparseMatrix gradient_1d(const ProblemParams& params);

/// Nonsingular Oseen-type test problem: A = blockdiag(I(x)T + T(x)I, same),
/// B = [I(x)F; F(x)I], exact solution all ones.
SaddlePointSystem build_example1(std::size_t p, double v);

/// Singular variant: B = [B^, B^(e;0), B^(0;e)] with e the ones vector of
/// length p^2/2, so the two appended columns lie in range(B^). Needs even p.
SaddlePointSystem build_example2(std::size_t p, double v);

struct RhsPair {
  Vector f;
  Vector g;
};

/// f = A 1 + B 1, g = B^T 1, making (1; 1) the exact solution.
RhsPair rhs_for_ones(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace mgssp
