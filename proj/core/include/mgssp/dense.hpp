#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mgssp/sparse.hpp"

namespace mgssp {

using Complex = std::complex<double>;
using ComplexList = std::vector<Complex>;

/// Row-major dense matrix used for desk-scale factorizations and spectra.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }

  [[nodiscard]] std::span<double> row(std::size_t i) noexcept { return {entries_.data() + i * cols_, cols_}; }
  [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
    return {entries_.data() + i * cols_, cols_};
  }
  [[nodiscard]] std::span<const double> entries() const noexcept { return entries_; }
  [[nodiscard]] std::span<double> entries() noexcept { return entries_; }

  [[nodiscard]] Vector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const double> values);

  [[nodiscard]] DenseMatrix transpose() const;
  [[nodiscard]] double max_abs() const noexcept;
  [[nodiscard]] bool all_finite() const noexcept;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
Vector matvec(const DenseMatrix& a, std::span<const double> x);
DenseMatrix add(const DenseMatrix& x, const DenseMatrix& y, double a = 1.0, double b = 1.0);

/// Largest |x_ij - y_ij|; shapes must agree.
double max_abs_diff(const DenseMatrix& x, const DenseMatrix& y);

/// Largest |m_ij - m_ji| relative to max|m_ij| (0 for a zero matrix).
double asymmetry(const DenseMatrix& m);
/// Same for m + m^T.
double skew_defect(const DenseMatrix& m);

double norm2(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
/// y += a x
void axpy(double a, std::span<const double> x, std::span<double> y);

}  // namespace mgssp
