#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mgssp/preconditioner.hpp"
#include "mgssp/problems.hpp"

namespace mgssp {

struct SolveConfig {
  double tolerance = 1e-6;
  std::size_t max_iterations = 500;
  /// Empty means the zero vector.
  Vector initial_guess;

  void validate(std::size_t system_size) const;
};

struct IterationReport {
  std::size_t iterations = 0;
  /// RES at steps 0..iterations.
  std::vector<double> res_history;
  bool converged = false;
  double final_res = 0.0;
  double wall_time_ms = 0.0;
  /// GMRES only: largest |Givens residual estimate - true RES| seen.
  double max_estimate_gap = 0.0;
  Vector solution;
};

/// sqrt(|f - Ax - By|^2 + |g - B^T x|^2) / sqrt(|f|^2 + |g|^2).
double res_norm(const SaddlePointSystem& system, std::span<const double> x, std::span<const double> y);
double res_norm(const SaddlePointSystem& system, std::span<const double> u);

/// Any right preconditioner w -> M^{-1} w.
using PreconditionerFn = std::function<Vector(std::span<const double>)>;

/// u_{k+1} = u_k + P^{-1}(b - saddle * u_k), i.e. the shift-splitting
/// fixed-point iteration u_{k+1} = T u_k + P^{-1} b.
IterationReport stationary_solve(const SaddlePointSystem& system, const ShiftSplitPreconditioner& precond,
                                 const SolveConfig& cfg = {});

/// Full (non-restarted) GMRES, right-preconditioned, modified Gram-Schmidt
/// Arnoldi with Givens rotations. The stopping test uses the true RES of
/// the iterate formed after every Arnoldi step; IT counts Arnoldi steps.
IterationReport gmres_solve(const SaddlePointSystem& system, const ShiftSplitPreconditioner* precond,
                            const SolveConfig& cfg = {});
IterationReport gmres_solve(const SaddlePointSystem& system, const PreconditionerFn& precond,
                            const SolveConfig& cfg = {});

}  // namespace mgssp
