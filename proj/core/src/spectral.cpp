#include "mgssp/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "mgssp/dense_factor.hpp"
#include "mgssp/error.hpp"

namespace mgssp {

SymmetricExtremes symmetric_extremes(const DenseMatrix& m) {
  if (m.rows() == 0) throw Error(ErrorCode::InvalidDimension, "symmetric_extremes of an empty matrix");
  const auto eig = symmetric_eigenvalues(m);
  return {eig.front(), eig.back()};
}

double skew_radius(const DenseMatrix& s) {
  if (!s.square()) throw Error(ErrorCode::InvalidDimension, "skew_radius needs a square matrix");
  if (skew_defect(s) > 1e-12) throw Error(ErrorCode::InvalidInput, "matrix is not skew-symmetric");
  if (s.rows() == 0) return 0.0;
  DenseMatrix sts = matmul(s.transpose(), s);
  // Rounding leaves S^T S a few ulps from symmetric.
  for (std::size_t i = 0; i < sts.rows(); ++i)
    for (std::size_t j = i + 1; j < sts.cols(); ++j) sts(j, i) = sts(i, j);
  return std::sqrt(std::max(0.0, symmetric_extremes(sts).max_eig));
}

double spectral_radius(std::span<const Complex> eigenvalues) {
  double r = 0.0;
  for (const auto& l : eigenvalues) r = std::max(r, std::abs(l));
  return r;
}

double pseudo_spectral_radius(std::span<const Complex> eigenvalues) {
  double r = 0.0;
  for (const auto& l : eigenvalues)
    if (std::abs(l - 1.0) > kUnitEigenTolerance) r = std::max(r, std::abs(l));
  return r;
}

namespace {

void check_desk_scale(const SaddlePointSystem& system) {
  if (system.size() > kEigenDimensionLimit) {
    throw Error(ErrorCode::ResourceLimit, "spectral matrices limited to m + n <= 2000");
  }
}

DenseMatrix solve_columns(const ShiftSplitPreconditioner& precond, const DenseMatrix& rhs) {
  DenseMatrix out(rhs.rows(), rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) out.set_column(j, precond.apply(rhs.column(j)));
  return out;
}

}  // namespace

DenseMatrix iteration_matrix(const SaddlePointSystem& system, const ShiftSplitPreconditioner& precond) {
  check_desk_scale(system);
  return solve_columns(precond, precond.assemble_Q(system));
}

DenseMatrix iteration_matrix(const SaddlePointSystem& system, FamilyKind kind, ShiftParams params) {
  check_desk_scale(system);
  return iteration_matrix(system, ShiftSplitPreconditioner::build(kind, system, params));
}

DenseMatrix preconditioned_matrix(const SaddlePointSystem& system, const ShiftSplitPreconditioner& precond) {
  check_desk_scale(system);
  return solve_columns(precond, to_dense(assemble_saddle(system.A, system.B)));
}

DenseMatrix preconditioned_matrix(const SaddlePointSystem& system, FamilyKind kind, ShiftParams params) {
  check_desk_scale(system);
  return preconditioned_matrix(system, ShiftSplitPreconditioner::build(kind, system, params));
}

ConvergenceVerdict convergence_check(const DenseMatrix& t) {
  const double rho = spectral_radius(dense_eigenvalues(t));
  return {rho, rho < 1.0 - 1e-10};
}

SpectralReport semiconvergence_check(const DenseMatrix& t, double rank_tol) {
  if (!t.square()) throw Error(ErrorCode::InvalidDimension, "semiconvergence_check needs a square matrix");
  SpectralReport rep;
  rep.eigenvalues = dense_eigenvalues(t);
  rep.spectral_radius = spectral_radius(rep.eigenvalues);
  rep.pseudo_spectral_radius = pseudo_spectral_radius(rep.eigenvalues);

  const DenseMatrix i_minus_t = add(DenseMatrix::identity(t.rows()), t, 1.0, -1.0);
  rep.rank_IminusT = numerical_rank(i_minus_t, rank_tol);
  rep.rank_IminusT_squared = numerical_rank(matmul(i_minus_t, i_minus_t), rank_tol);
  rep.index_condition_ok = rep.rank_IminusT == rep.rank_IminusT_squared;
  return rep;
}

bool root_modulus_predicate(const QuadraticCoeffs& q) {
  if (!std::isfinite(q.phi.real()) || !std::isfinite(q.phi.imag()) || !std::isfinite(q.psi.real()) ||
      !std::isfinite(q.psi.imag())) {
    throw Error(ErrorCode::InvalidInput, "quadratic coefficients must be finite");
  }
  return std::abs(q.phi - std::conj(q.phi) * q.psi) + std::norm(q.psi) < 1.0;
}

RayleighTriple rayleigh_triple(const SaddlePointSystem& system, std::span<const Complex> u) {
  if (u.size() != system.m()) throw Error(ErrorCode::InvalidDimension, "rayleigh_triple: u must have length m");
  Vector re(u.size());
  Vector im(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    re[i] = u[i].real();
    im[i] = u[i].imag();
  }
  const double uu = dot(re, re) + dot(im, im);
  if (uu == 0.0) throw Error(ErrorCode::InvalidInput, "rayleigh_triple: zero vector");

  // u*Au = (p - iq)^T A (p + iq) for real A.
  const Vector ap = spmv(system.A, re);
  const Vector aq = spmv(system.A, im);
  const double real_part = dot(re, ap) + dot(im, aq);
  const double imag_part = dot(re, aq) - dot(im, ap);
  const Vector btp = spmv_t(system.B, re);
  const Vector btq = spmv_t(system.B, im);
  const double c1 = (dot(btp, btp) + dot(btq, btq)) / uu;
  return {real_part / uu, imag_part / uu, c1};
}

EigPrediction predict_eigenpair(const RayleighTriple& t, const ShiftParams& params) {
  params.validate();
  if (!std::isfinite(t.a1) || !std::isfinite(t.b1) || !std::isfinite(t.c1) || t.c1 < 0.0) {
    throw Error(ErrorCode::InvalidInput, "Rayleigh triple must be finite with c1 >= 0");
  }
  const double alpha = params.alpha;
  const double beta = params.beta;
  const double a1 = t.a1;
  const double b1 = t.b1;
  const double c1 = t.c1;

  const Complex denom{alpha * beta + 2.0 * beta * a1 + 4.0 * c1, 2.0 * beta * b1};
  if (denom == Complex{}) throw Error(ErrorCode::InvalidInput, "degenerate quadratic (zero leading coefficient)");

  const double a2 = beta * beta * (a1 * a1 - b1 * b1) - 4.0 * alpha * beta * c1;
  const double b2 = 2.0 * beta * beta * a1 * b1;
  const double modulus = std::hypot(a2, b2);
  const double sgn = b1 >= 0.0 ? 1.0 : -1.0;
  double z1 = 0.0;
  double z2 = 0.0;
  // Compute the larger component directly and recover the other from
  // 2 z1 z2 = b2 to avoid cancellation in (|w| -/+ a2).
  if (a2 >= 0.0) {
    z1 = std::sqrt(0.5 * (modulus + a2));
    z2 = z1 > 0.0 ? b2 / (2.0 * z1) : 0.0;
  } else {
    z2 = sgn * std::sqrt(0.5 * (modulus - a2));
    z1 = b2 / (2.0 * z2);
    if (z1 < 0.0) {  // a1 < 0 puts the root in the other half-plane
      z1 = -z1;
      z2 = -z2;
    }
  }
  const Complex z{z1, z2};
  const Complex shift{alpha * beta + beta * a1, beta * b1};
  return {z1, z2, 0.5 + (z - shift) / (2.0 * denom), 0.5 - (z + shift) / (2.0 * denom)};
}

double disc_bound(const RayleighTriple& t, const ShiftParams& params) {
  const double alpha = params.alpha;
  const double beta = params.beta;
  const double lead = alpha * beta + 2.0 * beta * t.a1;
  const double imag = beta * std::abs(t.b1) + std::sqrt(beta * beta * t.b1 * t.b1 + 4.0 * alpha * beta * t.c1);
  const double d = alpha * beta + 2.0 * beta * t.a1 + 4.0 * t.c1;
  return (lead * lead + imag * imag) / (4.0 * (d * d + 4.0 * beta * beta * t.b1 * t.b1));
}

BtuZeroBounds btu_zero_bounds(double min_h, double rho_h, double rho_s, double alpha) {
  if (!(min_h > 0.0) || rho_h < min_h || rho_s < 0.0 || alpha < 0.0) {
    throw Error(ErrorCode::InvalidInput, "btu_zero_bounds needs 0 < minH <= rhoH, rhoS >= 0, alpha >= 0");
  }
  const double lo_den = (alpha + 2.0 * rho_h) * (alpha + 2.0 * rho_h) + 4.0 * rho_s * rho_s;
  const double hi_den = (alpha + 2.0 * min_h) * (alpha + 2.0 * min_h);
  return {min_h * (alpha + 2.0 * min_h) / lo_den, (rho_h * (alpha + 2.0 * rho_h) + 2.0 * rho_s * rho_s) / hi_den,
          alpha * rho_s / hi_den};
}

std::size_t eigenspace_dim(const DenseMatrix& m, Complex lambda, double tol) {
  if (!m.square()) throw Error(ErrorCode::InvalidDimension, "eigenspace_dim needs a square matrix");
  const std::size_t n = m.rows();
  if (lambda.imag() == 0.0) {
    DenseMatrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda.real();
    return n - numerical_rank(std::move(shifted), tol);
  }
  // (X + iY) with X = M - Re(lambda) I, Y = -Im(lambda) I  ->  [[X, -Y], [Y, X]].
  DenseMatrix embed(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = m(i, j) - (i == j ? lambda.real() : 0.0);
      embed(i, j) = x;
      embed(n + i, n + j) = x;
    }
    embed(i, n + i) = lambda.imag();
    embed(n + i, i) = -lambda.imag();
  }
  const std::size_t rank = numerical_rank(std::move(embed), tol);
  return (2 * n - rank) / 2;
}

}  // namespace mgssp
