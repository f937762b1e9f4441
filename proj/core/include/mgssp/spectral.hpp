#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgssp/dense.hpp"
#include "mgssp/eigen.hpp"
#include "mgssp/preconditioner.hpp"
#include "mgssp/problems.hpp"

namespace mgssp {

/// Eigenvalues within this distance of 1 are excluded from the
/// pseudo-spectral radius.
inline constexpr double kUnitEigenTolerance = 1e-8;

struct SymmetricExtremes {
  double min_eig;
  double max_eig;
};

/// Requires symmetry to 1e-12 relative.
SymmetricExtremes symmetric_extremes(const DenseMatrix& m);

/// rho(S) = sqrt(lambda_max(S^T S)) for skew-symmetric S.
double skew_radius(const DenseMatrix& s);

double spectral_radius(std::span<const Complex> eigenvalues);
/// Largest modulus excluding eigenvalues with |lambda - 1| <= kUnitEigenTolerance;
/// 0 when nothing remains.
double pseudo_spectral_radius(std::span<const Complex> eigenvalues);

/// T(alpha, beta) = P^{-1} Q, one preconditioner solve per column of Q.
DenseMatrix iteration_matrix(const SaddlePointSystem& system, FamilyKind kind, ShiftParams params);
DenseMatrix iteration_matrix(const SaddlePointSystem& system, const ShiftSplitPreconditioner& precond);

/// P^{-1} * saddle matrix, column by column.
DenseMatrix preconditioned_matrix(const SaddlePointSystem& system, FamilyKind kind, ShiftParams params);
DenseMatrix preconditioned_matrix(const SaddlePointSystem& system, const ShiftSplitPreconditioner& precond);

struct ConvergenceVerdict {
  double rho;
  bool converges;  // rho < 1 - 1e-10
};

ConvergenceVerdict convergence_check(const DenseMatrix& t);

struct SpectralReport {
  ComplexList eigenvalues;
  double spectral_radius = 0.0;
  double pseudo_spectral_radius = 0.0;
  bool index_condition_ok = false;
  std::size_t rank_IminusT = 0;
  std::size_t rank_IminusT_squared = 0;

  /// Both semi-convergence conditions: gamma(T) < 1 and index(I - T) = 1.
  [[nodiscard]] bool semi_convergent() const noexcept {
    return pseudo_spectral_radius < 1.0 && index_condition_ok;
  }
};

SpectralReport semiconvergence_check(const DenseMatrix& t, double rank_tol);

/// Coefficients of x^2 - phi x + psi = 0.
struct QuadraticCoeffs {
  Complex phi;
  Complex psi;
};

/// True iff both roots have modulus < 1, decided by
/// |phi - conj(phi) psi| + |psi|^2 < 1.
bool root_modulus_predicate(const QuadraticCoeffs& q);

/// a1 + i b1 = u*Au / u*u and c1 = |B^T u|^2 / |u|^2 for the velocity part u.
struct RayleighTriple {
  double a1;
  double b1;
  double c1;
};

RayleighTriple rayleigh_triple(const SaddlePointSystem& system, std::span<const Complex> u);

/// Closed-form eigenvalues of the MGSSP-preconditioned matrix for an
/// eigenvector with B^T u != 0. z1 + i z2 is the square root of
///   a2 + i b2 = beta^2 (a1^2 - b1^2) - 4 alpha beta c1 + 2i beta^2 a1 b1
/// with z1 >= 0 and sign(z2) = sign(b1), sign(0) := +1.
struct EigPrediction {
  double z1;
  double z2;
  Complex lambda_plus;
  Complex lambda_minus;
};

EigPrediction predict_eigenpair(const RayleighTriple& t, const ShiftParams& params);

/// Upper bound f(a1, b1, c1) on |lambda -/+ 1/2|^2 for the predicted pair.
double disc_bound(const RayleighTriple& t, const ShiftParams& params);

/// Real/imaginary part bounds for eigenvalues whose eigenvector has B^T u = 0.
struct BtuZeroBounds {
  double re_lo;
  double re_hi;
  double im_abs;
};

BtuZeroBounds btu_zero_bounds(double min_h, double rho_h, double rho_s, double alpha);

/// dim null(M - lambda I); complex shifts go through the real 2n x 2n embedding.
std::size_t eigenspace_dim(const DenseMatrix& m, Complex lambda, double tol);

}  // namespace mgssp
