#include "mgssp/solvers.hpp"

#include <chrono>
#include <algorithm>
#include <cmath>

#include "mgssp/dense.hpp"
#include "mgssp/error.hpp"

namespace mgssp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

/// RES of u against precomputed b = (f; -g); equals the split form since
/// the second block only changes sign.
double relative_residual(const SaddlePointSystem& system, std::span<const double> b, double bnorm,
                         std::span<const double> u) {
  Vector r = system.apply(u);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return norm2(r) / bnorm;
}

Vector start_vector(const SaddlePointSystem& system, const SolveConfig& cfg) {
  cfg.validate(system.size());
  if (cfg.initial_guess.empty()) return Vector(system.size(), 0.0);
  return cfg.initial_guess;
}

double rhs_norm(std::span<const double> b) {
  const double bnorm = norm2(b);
  if (bnorm == 0.0) throw Error(ErrorCode::InvalidInput, "RES undefined for f = g = 0");
  return bnorm;
}

}  // namespace

void SolveConfig::validate(std::size_t system_size) const {
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidParameter, "tolerance must be > 0");
  if (max_iterations < 1) throw Error(ErrorCode::InvalidParameter, "max_iterations must be >= 1");
  if (!initial_guess.empty() && initial_guess.size() != system_size) {
    throw Error(ErrorCode::InvalidDimension, "initial guess length mismatch");
  }
}

double res_norm(const SaddlePointSystem& system, std::span<const double> x, std::span<const double> y) {
  if (x.size() != system.m() || y.size() != system.n()) {
    throw Error(ErrorCode::InvalidDimension, "res_norm: iterate length mismatch");
  }
  const double denom = std::hypot(norm2(system.f), norm2(system.g));
  if (denom == 0.0) throw Error(ErrorCode::InvalidInput, "RES undefined for f = g = 0");
  Vector r1 = spmv(system.A, x);
  axpy(1.0, spmv(system.B, y), r1);
  for (std::size_t i = 0; i < r1.size(); ++i) r1[i] = system.f[i] - r1[i];
  Vector r2 = spmv_t(system.B, x);
  for (std::size_t j = 0; j < r2.size(); ++j) r2[j] = system.g[j] - r2[j];
  return std::hypot(norm2(r1), norm2(r2)) / denom;
}

double res_norm(const SaddlePointSystem& system, std::span<const double> u) {
  if (u.size() != system.size()) throw Error(ErrorCode::InvalidDimension, "res_norm: iterate length mismatch");
  return res_norm(system, u.subspan(0, system.m()), u.subspan(system.m()));
}

IterationReport stationary_solve(const SaddlePointSystem& system, const ShiftSplitPreconditioner& precond,
                                 const SolveConfig& cfg) {
  const auto start = Clock::now();
  if (precond.size() != system.size()) throw Error(ErrorCode::InvalidDimension, "preconditioner/system mismatch");
  Vector u = start_vector(system, cfg);
  const Vector b = system.rhs();
  const double bnorm = rhs_norm(b);

  IterationReport rep;
  auto residual = [&] {
    Vector r = system.apply(u);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    return r;
  };
  Vector r = residual();
  rep.res_history.push_back(norm2(r) / bnorm);

  while (rep.res_history.back() >= cfg.tolerance && rep.iterations < cfg.max_iterations) {
    const Vector du = precond.apply(r);
    axpy(1.0, du, u);
    if (!all_finite(u)) throw Error(ErrorCode::NumericalOverflow, "stationary iterate became non-finite");
    r = residual();
    ++rep.iterations;
    rep.res_history.push_back(norm2(r) / bnorm);
  }
  rep.final_res = rep.res_history.back();
  rep.converged = rep.final_res < cfg.tolerance;
  rep.solution = std::move(u);
  rep.wall_time_ms = elapsed_ms(start);
  return rep;
}

IterationReport gmres_solve(const SaddlePointSystem& system, const ShiftSplitPreconditioner* precond,
                            const SolveConfig& cfg) {
  if (precond == nullptr) return gmres_solve(system, PreconditionerFn{}, cfg);
  if (precond->size() != system.size()) throw Error(ErrorCode::InvalidDimension, "preconditioner/system mismatch");
  return gmres_solve(
      system, [precond](std::span<const double> w) { return precond->apply(w); }, cfg);
}

IterationReport gmres_solve(const SaddlePointSystem& system, const PreconditionerFn& precond,
                            const SolveConfig& cfg) {
  const auto start = Clock::now();
  const Vector x0 = start_vector(system, cfg);
  const Vector b = system.rhs();
  const double bnorm = rhs_norm(b);
  const std::size_t dim = system.size();

  IterationReport rep;
  Vector r0 = system.apply(x0);
  for (std::size_t i = 0; i < dim; ++i) r0[i] = b[i] - r0[i];
  const double beta0 = norm2(r0);
  rep.res_history.push_back(beta0 / bnorm);
  rep.solution = x0;
  if (rep.res_history.back() < cfg.tolerance || beta0 == 0.0) {
    rep.final_res = rep.res_history.back();
    rep.converged = rep.final_res < cfg.tolerance;
    rep.wall_time_ms = elapsed_ms(start);
    return rep;
  }

  const std::size_t kmax = cfg.max_iterations;
  std::vector<Vector> basis;     // Arnoldi vectors v_j
  std::vector<Vector> directions;  // z_j = M^{-1} v_j
  std::vector<Vector> hess;      // column j of the rotated Hessenberg matrix (length j+2)
  std::vector<double> cs;
  std::vector<double> sn;
  std::vector<double> g{beta0};

  for (double& v : r0) v /= beta0;
  basis.push_back(std::move(r0));

  for (std::size_t j = 0; j < kmax; ++j) {
    Vector z = precond ? precond(basis[j]) : basis[j];
    Vector w = system.apply(z);
    if (!all_finite(w)) throw Error(ErrorCode::NumericalOverflow, "non-finite Krylov vector");
    directions.push_back(std::move(z));

    Vector h(j + 2, 0.0);
    for (std::size_t i = 0; i <= j; ++i) {
      h[i] = dot(w, basis[i]);
      axpy(-h[i], basis[i], w);
    }
    h[j + 1] = norm2(w);
    const double subdiag = h[j + 1];

    for (std::size_t i = 0; i < j; ++i) {
      const double t = cs[i] * h[i] + sn[i] * h[i + 1];
      h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
      h[i] = t;
    }
    const double rr = std::hypot(h[j], h[j + 1]);
    const double c = rr == 0.0 ? 1.0 : h[j] / rr;
    const double s = rr == 0.0 ? 0.0 : h[j + 1] / rr;
    cs.push_back(c);
    sn.push_back(s);
    h[j] = rr;
    h[j + 1] = 0.0;
    g.push_back(-s * g[j]);
    g[j] = c * g[j];
    hess.push_back(std::move(h));

    // Back substitution on the (j+1)x(j+1) triangle, then x = x0 + Z y.
    const std::size_t k = j + 1;
    std::vector<double> y(k);
    for (std::size_t i = k; i-- > 0;) {
      double sum = g[i];
      for (std::size_t l = i + 1; l < k; ++l) sum -= hess[l][i] * y[l];
      if (hess[i][i] == 0.0) throw Error(ErrorCode::NumericalOverflow, "GMRES least-squares system is singular");
      y[i] = sum / hess[i][i];
    }
    Vector x = x0;
    for (std::size_t i = 0; i < k; ++i) axpy(y[i], directions[i], x);

    const double res = relative_residual(system, b, bnorm, x);
    const double estimate = std::abs(g[k]) / bnorm;
    rep.max_estimate_gap = std::max(rep.max_estimate_gap, std::abs(res - estimate));
    rep.iterations = k;
    rep.res_history.push_back(res);
    rep.solution = std::move(x);
    if (res < cfg.tolerance) break;

    // Happy breakdown: the Krylov space is invariant, nothing more to gain.
    if (subdiag <= 1e-14 * beta0) break;
    for (double& v : w) v /= subdiag;
    basis.push_back(std::move(w));
  }

  rep.final_res = rep.res_history.back();
  rep.converged = rep.final_res < cfg.tolerance;
  rep.wall_time_ms = elapsed_ms(start);
  return rep;
}

}  // namespace mgssp
