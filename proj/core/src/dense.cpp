#include "mgssp/dense.hpp"

#include <algorithm>
#include <cmath>

#include "mgssp/error.hpp"

namespace mgssp {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  if (rows != 0 && cols > kDenseEntryBudget / rows) {
    throw Error(ErrorCode::ResourceLimit, "dense matrix exceeds 1e8 entries");
  }
  entries_.assign(rows * cols, 0.0);
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw Error(ErrorCode::InvalidDimension, "entry count != rows*cols");
  if (!all_finite()) throw Error(ErrorCode::InvalidInput, "non-finite dense entry");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> e;
  e.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorCode::InvalidDimension, "ragged row list");
    e.insert(e.end(), row.begin(), row.end());
  }
  return DenseMatrix(r, c, std::move(e));
}

Vector DenseMatrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void DenseMatrix::set_column(std::size_t j, std::span<const double> values) {
  if (values.size() != rows_) throw Error(ErrorCode::InvalidDimension, "set_column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

bool DenseMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidDimension, "matmul: inner dimension mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Vector matvec(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::InvalidDimension, "matvec: length mismatch");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

DenseMatrix add(const DenseMatrix& x, const DenseMatrix& y, double a, double b) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw Error(ErrorCode::InvalidDimension, "add: shape mismatch");
  DenseMatrix z(x.rows(), x.cols());
  auto ze = z.entries();
  auto xe = x.entries();
  auto ye = y.entries();
  for (std::size_t k = 0; k < ze.size(); ++k) ze[k] = a * xe[k] + b * ye[k];
  return z;
}

double max_abs_diff(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::InvalidDimension, "max_abs_diff: shape mismatch");
  }
  double m = 0.0;
  auto xe = x.entries();
  auto ye = y.entries();
  for (std::size_t k = 0; k < xe.size(); ++k) m = std::max(m, std::abs(xe[k] - ye[k]));
  return m;
}

namespace {

double pair_defect(const DenseMatrix& m, double sign) {
  if (!m.square()) throw Error(ErrorCode::InvalidDimension, "square matrix required");
  const double scale = m.max_abs();
  if (scale == 0.0) return 0.0;
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - sign * m(j, i)));
  return d / scale;
}

}  // namespace

double asymmetry(const DenseMatrix& m) { return pair_defect(m, 1.0); }
double skew_defect(const DenseMatrix& m) { return pair_defect(m, -1.0); }

double norm2(std::span<const double> x) {
  // Scaled sum of squares, as in LAPACK dnrm2.
  double scale = 0.0;
  double ssq = 1.0;
  for (double v : x) {
    if (v == 0.0) continue;
    const double a = std::abs(v);
    if (scale < a) {
      ssq = 1.0 + ssq * (scale / a) * (scale / a);
      scale = a;
    } else {
      ssq += (a / scale) * (a / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

}  // namespace mgssp
