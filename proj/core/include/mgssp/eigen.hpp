#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgssp/dense.hpp"

namespace mgssp {

inline constexpr std::size_t kEigenDimensionLimit = 2000;

/// All eigenvalues of a general real matrix: balancing, Householder
/// reduction to upper Hessenberg form, then Francis double-shift QR.
/// Complex pairs come out as conjugates from the 2x2 diagonal blocks.
/// Fails with EigensolverFailure after 30*n QR sweeps.
ComplexList dense_eigenvalues(const DenseMatrix& m);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi, ascending.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& m);

/// Eigenvector for an (approximate) eigenvalue via complex inverse
/// iteration. Unit 2-norm.
std::vector<Complex> inverse_iteration(const DenseMatrix& m, Complex lambda);

}  // namespace mgssp
