#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mgssp {

using Vector = std::vector<double>;

class DenseMatrix;

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix with sorted, duplicate-free column indices
/// and no stored zeros. Immutable once built.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_starts_(rows + 1, 0) {}

  /// Takes ownership of raw CSR arrays and validates every structural invariant.
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_starts,
               std::vector<std::size_t> col_indices, std::vector<double> values);

  /// Duplicates are summed, zeros (including cancellations) dropped.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);
  static SparseMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t nnz() const noexcept { return values_.size(); }
  [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

  [[nodiscard]] std::span<const std::size_t> row_starts() const noexcept { return row_starts_; }
  [[nodiscard]] std::span<const std::size_t> col_indices() const noexcept { return col_indices_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

  /// Binary search within the row; zero when the entry is not stored.
  [[nodiscard]] double at(std::size_t i, std::size_t j) const;

  [[nodiscard]] SparseMatrix transpose() const;
  [[nodiscard]] std::vector<Triplet> triplets() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_starts_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

SparseMatrix tridiag(std::size_t n, double lo, double di, double up);
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

/// a*x + b*y, same shape required.
SparseMatrix add(const SparseMatrix& x, const SparseMatrix& y, double a = 1.0, double b = 1.0);
SparseMatrix scale(const SparseMatrix& m, double factor);

/// [top; bottom] and [left, right].
SparseMatrix vstack(const SparseMatrix& top, const SparseMatrix& bottom);
SparseMatrix hstack(const SparseMatrix& left, const SparseMatrix& right);
SparseMatrix block_diag(const SparseMatrix& a, const SparseMatrix& b);

Vector spmv(const SparseMatrix& m, std::span<const double> x);
/// m^T x without forming the transpose.
Vector spmv_t(const SparseMatrix& m, std::span<const double> x);

struct SymSkewParts {
  SparseMatrix sym;
  SparseMatrix skew;
};

/// H = (A + A^T)/2, S = (A - A^T)/2.
SymSkewParts sym_skew_split(const SparseMatrix& a);

/// [[A, B], [-B^T, 0]].
SparseMatrix assemble_saddle(const SparseMatrix& a, const SparseMatrix& b);

/// Entry budget guard for dense conversions.
inline constexpr std::size_t kDenseEntryBudget = 100'000'000;

DenseMatrix to_dense(const SparseMatrix& m);

}  // namespace mgssp
