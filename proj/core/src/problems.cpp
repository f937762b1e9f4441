#include "mgssp/problems.hpp"

#include <cmath>
#include <random>
#include <string>

#include "mgssp/dense.hpp"
#include "mgssp/error.hpp"

namespace mgssp {

Vector SaddlePointSystem::rhs() const {
  Vector b(size());
  std::copy(f.begin(), f.end(), b.begin());
  for (std::size_t j = 0; j < n(); ++j) b[m() + j] = -g[j];
  return b;
}

Vector SaddlePointSystem::apply(std::span<const double> u) const {
  if (u.size() != size()) throw Error(ErrorCode::InvalidDimension, "saddle apply: length mismatch");
  const auto x = u.subspan(0, m());
  const auto y = u.subspan(m(), n());
  Vector out(size());
  const Vector ax = spmv(A, x);
  const Vector by = spmv(B, y);
  const Vector btx = spmv_t(B, x);
  for (std::size_t i = 0; i < m(); ++i) out[i] = ax[i] + by[i];
  for (std::size_t j = 0; j < n(); ++j) out[m() + j] = -btx[j];
  return out;
}

void SaddlePointSystem::validate() const {
  if (!A.square()) throw Error(ErrorCode::InvalidDimension, "A must be square");
  if (B.rows() != A.rows()) throw Error(ErrorCode::InvalidDimension, "B must have m rows");
  if (n() > m()) throw Error(ErrorCode::InvalidDimension, "saddle point system needs n <= m");
  if (f.size() != m() || g.size() != n()) throw Error(ErrorCode::InvalidDimension, "rhs length mismatch");

  std::mt19937_64 rng(20170101);
  std::normal_distribution<double> normal;
  Vector x(m());
  for (int trial = 0; trial < 20 && m() > 0; ++trial) {
    for (auto& xi : x) xi = normal(rng);
    const double nx = norm2(x);
    for (auto& xi : x) xi /= nx;
    if (!(dot(x, spmv(A, x)) > 0.0)) {
      throw Error(ErrorCode::InvalidInput, "A failed the positive-definiteness probe");
    }
  }
}

SparseMatrix convection_diffusion_1d(const ProblemParams& params) {
  const double h = params.h();
  return add(tridiag(params.p, -1.0, 2.0, -1.0), tridiag(params.p, -1.0, 0.0, 1.0), params.v / (h * h),
             1.0 / (2.0 * h));
}

SparseMatrix gradient_1d(const ProblemParams& params) {
  return scale(tridiag(params.p, -1.0, 1.0, 0.0), 1.0 / params.h());
}

namespace {

void check_params(std::size_t p, double v) {
  if (p < 2) throw Error(ErrorCode::InvalidParameter, "grid count p must be >= 2");
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::InvalidParameter, "viscosity v must be > 0");
}

struct Blocks {
  SparseMatrix A;
  SparseMatrix B;
};

Blocks oseen_blocks(std::size_t p, double v) {
  const ProblemParams params{p, v};
  const auto t = convection_diffusion_1d(params);
  const auto f = gradient_1d(params);
  const auto eye = SparseMatrix::identity(p);
  const auto lap = add(kron(eye, t), kron(t, eye));
  return {block_diag(lap, lap), vstack(kron(eye, f), kron(f, eye))};
}

SaddlePointSystem with_ones_rhs(SparseMatrix a, SparseMatrix b) {
  auto [f, g] = rhs_for_ones(a, b);
  SaddlePointSystem sys{std::move(a), std::move(b), std::move(f), std::move(g)};
  sys.validate();
  return sys;
}

}  // namespace

SaddlePointSystem build_example1(std::size_t p, double v) {
  check_params(p, v);
  auto [a, b] = oseen_blocks(p, v);
  return with_ones_rhs(std::move(a), std::move(b));
}

SaddlePointSystem build_example2(std::size_t p, double v) {
  check_params(p, v);
  if (p % 2 != 0) {
    throw Error(ErrorCode::InvalidParameter, "example 2 needs even p (e has length p^2/2), got " + std::to_string(p));
  }
  auto [a, bhat] = oseen_blocks(p, v);
  const std::size_t n0 = p * p;
  Vector e_first(n0, 0.0);
  Vector e_second(n0, 0.0);
  for (std::size_t j = 0; j < n0 / 2; ++j) e_first[j] = 1.0;
  for (std::size_t j = n0 / 2; j < n0; ++j) e_second[j] = 1.0;
  const Vector b1 = spmv(bhat, e_first);
  const Vector b2 = spmv(bhat, e_second);

  std::vector<Triplet> extra;
  for (std::size_t i = 0; i < b1.size(); ++i) {
    extra.push_back({i, 0, b1[i]});
    extra.push_back({i, 1, b2[i]});
  }
  auto b = hstack(bhat, SparseMatrix::from_triplets(bhat.rows(), 2, std::move(extra)));
  return with_ones_rhs(std::move(a), std::move(b));
}

RhsPair rhs_for_ones(const SparseMatrix& a, const SparseMatrix& b) {
  if (!a.square() || b.rows() != a.rows()) throw Error(ErrorCode::InvalidDimension, "rhs_for_ones: shape mismatch");
  const Vector ones_m(a.rows(), 1.0);
  const Vector ones_n(b.cols(), 1.0);
  Vector f = spmv(a, ones_m);
  const Vector bo = spmv(b, ones_n);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] += bo[i];
  return {std::move(f), spmv_t(b, ones_m)};
}

}  // namespace mgssp
