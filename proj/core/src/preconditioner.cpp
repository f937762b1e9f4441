#include "mgssp/preconditioner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "mgssp/error.hpp"

namespace mgssp {

std::string_view to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::SS: return "SS";
    case FamilyKind::GSS: return "GSS";
    case FamilyKind::MSS: return "MSS";
    case FamilyKind::GMSS: return "GMSS";
    case FamilyKind::MSSP: return "MSSP";
    case FamilyKind::MGSSP: return "MGSSP";
  }
  return "?";
}

std::optional<FamilyKind> parse_kind(std::string_view text) noexcept {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  for (FamilyKind k : kAllKinds) {
    if (to_string(k) == upper) return k;
  }
  return std::nullopt;
}

void ShiftParams::validate() const {
  if (!std::isfinite(alpha) || alpha < 0.0) throw Error(ErrorCode::InvalidParameter, "alpha must be >= 0");
  if (!std::isfinite(beta) || !(beta > 0.0)) throw Error(ErrorCode::InvalidParameter, "beta must be > 0");
}

ShiftParams ShiftParams::effective(FamilyKind kind) const {
  ShiftParams out = *this;
  if (describe(kind).ties_beta_to_alpha) out.beta = alpha;
  return out;
}

namespace {

SparseMatrix first_block(FirstBlock recipe, const SparseMatrix& a, double alpha) {
  const auto eye = SparseMatrix::identity(a.rows());
  switch (recipe) {
    case FirstBlock::ShiftA: return add(eye, a, alpha, 1.0);
    case FirstBlock::ShiftTwoH: return add(eye, sym_skew_split(a).sym, alpha, 2.0);
    case FirstBlock::ShiftTwoA: return add(eye, a, alpha, 2.0);
  }
  throw Error(ErrorCode::Internal, "unknown first-block recipe");
}

/// dense += factor * B B^T, accumulated column by column of B.
void add_bbt(DenseMatrix& dense, const SparseMatrix& b, double factor) {
  const auto bt = b.transpose();
  const auto starts = bt.row_starts();
  const auto rows = bt.col_indices();
  const auto vals = bt.values();
  for (std::size_t c = 0; c < bt.rows(); ++c) {
    for (std::size_t p = starts[c]; p < starts[c + 1]; ++p) {
      const double vp = factor * vals[p];
      auto out = dense.row(rows[p]);
      for (std::size_t q = starts[c]; q < starts[c + 1]; ++q) out[rows[q]] += vp * vals[q];
    }
  }
}

}  // namespace

ShiftSplitPreconditioner ShiftSplitPreconditioner::build(FamilyKind kind, const SaddlePointSystem& system,
                                                         ShiftParams params) {
  if (!system.A.square() || system.B.rows() != system.A.rows()) {
    throw Error(ErrorCode::InvalidDimension, "preconditioner: inconsistent system blocks");
  }
  ShiftSplitPreconditioner p;
  p.kind_ = kind;
  p.params_ = params.effective(kind);
  p.params_.validate();
  p.desc_ = describe(kind);
  p.first_block_ = first_block(p.desc_.first_block, system.A, p.params_.alpha);
  p.b_ = system.B;

  const DenseMatrix inner = p.inner_matrix();
  try {
    if (p.desc_.first_block == FirstBlock::ShiftTwoH) {
      p.factors_ = chol_factor(inner);
    } else {
      p.factors_ = lu_factor(inner);
    }
  } catch (const Error& e) {
    // Positive definite for any alpha >= 0, beta > 0 when A is.
    throw Error(ErrorCode::Internal, std::string("inner factorization failed: ") + e.what());
  }
  return p;
}

DenseMatrix ShiftSplitPreconditioner::inner_matrix() const {
  DenseMatrix inner = to_dense(first_block_);
  add_bbt(inner, b_, desc_.coupling * desc_.coupling / params_.beta);
  return inner;
}

Vector ShiftSplitPreconditioner::apply(std::span<const double> r) const {
  if (r.size() != size()) throw Error(ErrorCode::InvalidDimension, "preconditioner apply: length mismatch");
  const double c = desc_.coupling;
  const double beta = params_.beta;
  const auto r1 = r.subspan(0, m());
  const auto r2 = r.subspan(m(), n());

  Vector t1(r1.begin(), r1.end());
  axpy(-c / beta, spmv(b_, r2), t1);
  const Vector z1 = std::visit(
      [&](const auto& f) {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, LUFactors>) {
          return lu_solve(f, t1);
        } else {
          return chol_solve(f, t1);
        }
      },
      factors_);
  const Vector btz = spmv_t(b_, z1);

  const double inv_scale = 1.0 / desc_.scale;
  Vector z(size());
  for (std::size_t i = 0; i < m(); ++i) z[i] = z1[i] * inv_scale;
  for (std::size_t j = 0; j < n(); ++j) z[m() + j] = (c * btz[j] + r2[j]) / beta * inv_scale;
  return z;
}

DenseMatrix ShiftSplitPreconditioner::assemble_P() const {
  const std::size_t mm = m();
  const double s = desc_.scale;
  const double c = desc_.coupling;
  DenseMatrix p(size(), size());
  for (auto e : first_block_.triplets()) p(e.row, e.col) = s * e.value;
  for (auto e : b_.triplets()) {
    p(e.row, mm + e.col) = s * c * e.value;
    p(mm + e.col, e.row) = -s * c * e.value;
  }
  for (std::size_t j = 0; j < n(); ++j) p(mm + j, mm + j) = s * params_.beta;
  return p;
}

DenseMatrix ShiftSplitPreconditioner::assemble_Q(const SaddlePointSystem& system) const {
  if (system.size() != size()) throw Error(ErrorCode::InvalidDimension, "assemble_Q: system size mismatch");
  DenseMatrix q = assemble_P();
  for (auto e : assemble_saddle(system.A, system.B).triplets()) q(e.row, e.col) -= e.value;
  return q;
}

}  // namespace mgssp
