#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "mgssp/dense_factor.hpp"
#include "mgssp/problems.hpp"

namespace mgssp {

enum class FamilyKind { SS, GSS, MSS, GMSS, MSSP, MGSSP };

inline constexpr FamilyKind kAllKinds[] = {FamilyKind::SS,   FamilyKind::GSS,  FamilyKind::MSS,
                                           FamilyKind::GMSS, FamilyKind::MSSP, FamilyKind::MGSSP};

enum class FirstBlock {
  ShiftA,     // alpha I + A
  ShiftTwoH,  // alpha I + 2H, H the symmetric part of A
  ShiftTwoA,  // alpha I + 2A
};

/// Every family member has the shape
///   P = scale * [[first, coupling B], [-coupling B^T, beta I]]
/// and differs only in these four descriptors.
struct FamilyDescriptor {
  double scale;
  double coupling;
  FirstBlock first_block;
  bool ties_beta_to_alpha;
};

constexpr FamilyDescriptor describe(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::SS: return {0.5, 1.0, FirstBlock::ShiftA, true};
    case FamilyKind::GSS: return {0.5, 1.0, FirstBlock::ShiftA, false};
    case FamilyKind::MSS: return {0.5, 1.0, FirstBlock::ShiftTwoH, true};
    case FamilyKind::GMSS: return {0.5, 1.0, FirstBlock::ShiftTwoH, false};
    case FamilyKind::MSSP: return {1.0, 2.0, FirstBlock::ShiftTwoA, true};
    case FamilyKind::MGSSP: return {1.0, 2.0, FirstBlock::ShiftTwoA, false};
  }
  return {1.0, 2.0, FirstBlock::ShiftTwoA, false};
}

/// Upper-case label ("MGSSP").
std::string_view to_string(FamilyKind kind) noexcept;
/// Case-insensitive.
std::optional<FamilyKind> parse_kind(std::string_view text) noexcept;

struct ShiftParams {
  double alpha = 1.0;
  double beta = 1.0;

  /// Requires alpha >= 0 and beta > 0, both finite.
  void validate() const;
  /// Parameters actually used by `kind` (beta := alpha for tied kinds).
  [[nodiscard]] ShiftParams effective(FamilyKind kind) const;
};

class ShiftSplitPreconditioner {
 public:
  /// Forms the inner matrix first + (coupling^2/beta) B B^T densely and
  /// factors it once: Cholesky for the symmetric (H-based) kinds, LU otherwise.
  static ShiftSplitPreconditioner build(FamilyKind kind, const SaddlePointSystem& system, ShiftParams params);

  /// z = P^{-1} r by block elimination:
  ///   t1 = r1 - (c/beta) B r2;  inner z1 = t1;  z2 = (c B^T z1 + r2)/beta;  z /= scale.
  [[nodiscard]] Vector apply(std::span<const double> r) const;

  [[nodiscard]] DenseMatrix assemble_P() const;
  /// Q = P - saddle matrix.
  [[nodiscard]] DenseMatrix assemble_Q(const SaddlePointSystem& system) const;
  /// The dense inner matrix before factorization.
  [[nodiscard]] DenseMatrix inner_matrix() const;

  [[nodiscard]] FamilyKind kind() const noexcept { return kind_; }
  [[nodiscard]] const ShiftParams& params() const noexcept { return params_; }
  [[nodiscard]] const FamilyDescriptor& descriptor() const noexcept { return desc_; }
  [[nodiscard]] std::size_t m() const noexcept { return first_block_.rows(); }
  [[nodiscard]] std::size_t n() const noexcept { return b_.cols(); }
  [[nodiscard]] std::size_t size() const noexcept { return m() + n(); }
  [[nodiscard]] bool uses_cholesky() const noexcept { return std::holds_alternative<CholFactors>(factors_); }

 private:
  ShiftSplitPreconditioner() = default;

  FamilyKind kind_ = FamilyKind::MGSSP;
  ShiftParams params_;
  FamilyDescriptor desc_{};
  SparseMatrix first_block_;
  SparseMatrix b_;
  std::variant<LUFactors, CholFactors> factors_;
};

inline ShiftSplitPreconditioner build(FamilyKind kind, const SaddlePointSystem& system, ShiftParams params) {
  return ShiftSplitPreconditioner::build(kind, system, params);
}
inline Vector apply(const ShiftSplitPreconditioner& p, std::span<const double> r) { return p.apply(r); }
inline DenseMatrix assemble_P(const ShiftSplitPreconditioner& p) { return p.assemble_P(); }
inline DenseMatrix assemble_Q(const ShiftSplitPreconditioner& p, const SaddlePointSystem& system) {
  return p.assemble_Q(system);
}

}  // namespace mgssp
