#include "mgssp/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mgssp/dense.hpp"
#include "mgssp/error.hpp"

namespace mgssp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidDimension: return "invalid-dimension";
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::SingularMatrix: return "singular-matrix";
    case ErrorCode::NotPositiveDefinite: return "not-positive-definite";
    case ErrorCode::ResourceLimit: return "resource-limit";
    case ErrorCode::EigensolverFailure: return "eigensolver-failure";
    case ErrorCode::NumericalOverflow: return "numerical-overflow";
    case ErrorCode::Internal: return "internal-error";
  }
  return "unknown";
}

namespace {

[[noreturn]] void dim_error(const std::string& what) { throw Error(ErrorCode::InvalidDimension, what); }

std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    dim_error("dimension product overflows");
  }
  return a * b;
}

}  // namespace

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_starts,
                           std::vector<std::size_t> col_indices, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_starts_(std::move(row_starts)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (row_starts_.size() != rows_ + 1 || row_starts_.front() != 0) {
    dim_error("row_starts must have rows+1 entries starting at 0");
  }
  if (col_indices_.size() != values_.size() || row_starts_.back() != values_.size()) {
    dim_error("row_starts does not match stored value count");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    if (row_starts_[i] > row_starts_[i + 1]) dim_error("row_starts must be non-decreasing");
    for (std::size_t k = row_starts_[i]; k < row_starts_[i + 1]; ++k) {
      if (col_indices_[k] >= cols_) dim_error("column index out of range");
      if (k > row_starts_[i] && col_indices_[k] <= col_indices_[k - 1]) {
        dim_error("column indices must be strictly increasing within a row");
      }
      if (!std::isfinite(values_[k])) throw Error(ErrorCode::InvalidInput, "non-finite stored value");
    }
  }
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<std::size_t> starts(rows + 1, 0);
  std::vector<std::size_t> cols_out;
  std::vector<double> vals;
  cols_out.reserve(entries.size());
  vals.reserve(entries.size());

  std::size_t k = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    while (k < entries.size() && entries[k].row == i) {
      const std::size_t j = entries[k].col;
      if (j >= cols) dim_error("triplet column out of range");
      double sum = 0.0;
      while (k < entries.size() && entries[k].row == i && entries[k].col == j) sum += entries[k++].value;
      if (sum != 0.0) {
        cols_out.push_back(j);
        vals.push_back(sum);
      }
    }
    starts[i + 1] = vals.size();
  }
  if (k != entries.size()) dim_error("triplet row out of range");
  return SparseMatrix(rows, cols, std::move(starts), std::move(cols_out), std::move(vals));
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<std::size_t> starts(n + 1);
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i <= n; ++i) starts[i] = i;
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  return SparseMatrix(n, n, std::move(starts), std::move(cols), std::vector<double>(n, 1.0));
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) dim_error("index out of range");
  const auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_starts_[i]);
  const auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_starts_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::size_t> starts(cols_ + 1, 0);
  for (std::size_t c : col_indices_) ++starts[c + 1];
  for (std::size_t j = 0; j < cols_; ++j) starts[j + 1] += starts[j];
  std::vector<std::size_t> next(starts.begin(), starts.end() - 1);
  std::vector<std::size_t> rows_out(nnz());
  std::vector<double> vals(nnz());
  // Rows are visited in order, so each output row ends up sorted.
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_starts_[i]; k < row_starts_[i + 1]; ++k) {
      const std::size_t dst = next[col_indices_[k]]++;
      rows_out[dst] = i;
      vals[dst] = values_[k];
    }
  }
  return SparseMatrix(cols_, rows_, std::move(starts), std::move(rows_out), std::move(vals));
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_starts_[i]; k < row_starts_[i + 1]; ++k) {
      out.push_back({i, col_indices_[k], values_[k]});
    }
  }
  return out;
}

SparseMatrix tridiag(std::size_t n, double lo, double di, double up) {
  if (n == 0) dim_error("tridiag requires n >= 1");
  std::vector<Triplet> t;
  t.reserve(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) t.push_back({i, i - 1, lo});
    t.push_back({i, i, di});
    if (i + 1 < n) t.push_back({i, i + 1, up});
  }
  return SparseMatrix::from_triplets(n, n, std::move(t));
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() == 0 || a.cols() == 0 || b.rows() == 0 || b.cols() == 0) {
    dim_error("kron of an empty matrix");
  }
  const std::size_t rows = checked_mul(a.rows(), b.rows());
  const std::size_t cols = checked_mul(a.cols(), b.cols());
  checked_mul(a.nnz(), b.nnz());

  std::vector<Triplet> t;
  t.reserve(a.nnz() * b.nnz());
  for (const auto& ea : a.triplets()) {
    for (const auto& eb : b.triplets()) {
      t.push_back({ea.row * b.rows() + eb.row, ea.col * b.cols() + eb.col, ea.value * eb.value});
    }
  }
  return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

SparseMatrix add(const SparseMatrix& x, const SparseMatrix& y, double a, double b) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) dim_error("add: shape mismatch");
  std::vector<Triplet> t;
  t.reserve(x.nnz() + y.nnz());
  for (auto e : x.triplets()) t.push_back({e.row, e.col, a * e.value});
  for (auto e : y.triplets()) t.push_back({e.row, e.col, b * e.value});
  return SparseMatrix::from_triplets(x.rows(), x.cols(), std::move(t));
}

SparseMatrix scale(const SparseMatrix& m, double factor) {
  auto t = m.triplets();
  for (auto& e : t) e.value *= factor;
  return SparseMatrix::from_triplets(m.rows(), m.cols(), std::move(t));
}

SparseMatrix vstack(const SparseMatrix& top, const SparseMatrix& bottom) {
  if (top.cols() != bottom.cols()) dim_error("vstack: column count mismatch");
  auto t = top.triplets();
  for (auto e : bottom.triplets()) t.push_back({e.row + top.rows(), e.col, e.value});
  return SparseMatrix::from_triplets(top.rows() + bottom.rows(), top.cols(), std::move(t));
}

SparseMatrix hstack(const SparseMatrix& left, const SparseMatrix& right) {
  if (left.rows() != right.rows()) dim_error("hstack: row count mismatch");
  auto t = left.triplets();
  for (auto e : right.triplets()) t.push_back({e.row, e.col + left.cols(), e.value});
  return SparseMatrix::from_triplets(left.rows(), left.cols() + right.cols(), std::move(t));
}

SparseMatrix block_diag(const SparseMatrix& a, const SparseMatrix& b) {
  auto t = a.triplets();
  for (auto e : b.triplets()) t.push_back({e.row + a.rows(), e.col + a.cols(), e.value});
  return SparseMatrix::from_triplets(a.rows() + b.rows(), a.cols() + b.cols(), std::move(t));
}

Vector spmv(const SparseMatrix& m, std::span<const double> x) {
  if (x.size() != m.cols()) dim_error("spmv: vector length != cols");
  const auto starts = m.row_starts();
  const auto cols = m.col_indices();
  const auto vals = m.values();
  Vector y(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = starts[i]; k < starts[i + 1]; ++k) s += vals[k] * x[cols[k]];
    y[i] = s;
  }
  return y;
}

Vector spmv_t(const SparseMatrix& m, std::span<const double> x) {
  if (x.size() != m.rows()) dim_error("spmv_t: vector length != rows");
  const auto starts = m.row_starts();
  const auto cols = m.col_indices();
  const auto vals = m.values();
  Vector y(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (std::size_t k = starts[i]; k < starts[i + 1]; ++k) y[cols[k]] += vals[k] * xi;
  }
  return y;
}

SymSkewParts sym_skew_split(const SparseMatrix& a) {
  if (!a.square()) dim_error("sym_skew_split requires a square matrix");
  // Pairing a_ij with a_ji entry by entry keeps H exactly symmetric and S
  // exactly skew: both halves of each pair are computed from the same operands.
  std::vector<Triplet> h;
  std::vector<Triplet> s;
  const auto at = a.transpose();
  for (auto e : a.triplets()) {
    const double other = at.at(e.row, e.col);
    h.push_back({e.row, e.col, 0.5 * (e.value + other)});
    s.push_back({e.row, e.col, 0.5 * (e.value - other)});
  }
  for (auto e : at.triplets()) {
    if (a.at(e.row, e.col) != 0.0) continue;  // already covered above
    h.push_back({e.row, e.col, 0.5 * e.value});
    s.push_back({e.row, e.col, -0.5 * e.value});
  }
  return {SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(h)),
          SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(s))};
}

SparseMatrix assemble_saddle(const SparseMatrix& a, const SparseMatrix& b) {
  if (!a.square()) dim_error("assemble_saddle: A must be square");
  if (b.rows() != a.rows()) dim_error("assemble_saddle: B must have as many rows as A");
  const std::size_t m = a.rows();
  const std::size_t n = b.cols();
  auto t = a.triplets();
  for (auto e : b.triplets()) {
    t.push_back({e.row, m + e.col, e.value});
    t.push_back({m + e.col, e.row, -e.value});
  }
  return SparseMatrix::from_triplets(m + n, m + n, std::move(t));
}

DenseMatrix to_dense(const SparseMatrix& m) {
  if (checked_mul(m.rows(), m.cols()) > kDenseEntryBudget) {
    throw Error(ErrorCode::ResourceLimit, "dense conversion exceeds 1e8 entries");
  }
  DenseMatrix d(m.rows(), m.cols());
  for (auto e : m.triplets()) d(e.row, e.col) = e.value;
  return d;
}

}  // namespace mgssp
