#include "mgssp/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mgssp/error.hpp"

namespace mgssp {

namespace {

/// Parlett-Reinsch diagonal similarity scaling by powers of two.
void balance(DenseMatrix& a) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const std::size_t n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double inv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

void to_hessenberg(DenseMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<double> v;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    v.assign(len, 0.0);
    for (std::size_t i = 0; i < len; ++i) v[i] = a(k + 1 + i, k);
    const double xnorm = norm2(v);
    if (xnorm == 0.0) continue;
    const double alpha = v[0] > 0.0 ? -xnorm : xnorm;
    v[0] -= alpha;
    const double vv = dot(v, v);
    if (vv == 0.0) continue;

    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < len; ++i) s += v[i] * a(k + 1 + i, j);
      const double f = 2.0 * s / vv;
      for (std::size_t i = 0; i < len; ++i) a(k + 1 + i, j) -= f * v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto row = a.row(i).subspan(k + 1, len);
      const double f = 2.0 * dot(row, v) / vv;
      for (std::size_t j = 0; j < len; ++j) row[j] -= f * v[j];
    }
    a(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

double sign_of(double magnitude, double sign) { return sign >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude); }

/// Francis double-shift QR on an upper Hessenberg matrix (destroyed).
ComplexList hessenberg_qr(DenseMatrix& a) {
  const int n = static_cast<int>(a.rows());
  ComplexList eig(static_cast<std::size_t>(n));
  auto at = [&a](int i, int j) -> double& { return a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(at(i, j));

  const long sweep_limit = 30L * n;
  long sweeps = 0;
  int nn = n - 1;
  double shift = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      // Look for a negligible subdiagonal entry to split the problem.
      for (l = nn; l >= 1; --l) {
        double s = std::abs(at(l - 1, l - 1)) + std::abs(at(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(at(l, l - 1)) + s == s) {
          at(l, l - 1) = 0.0;
          break;
        }
      }
      double x = at(nn, nn);
      if (l == nn) {
        eig[static_cast<std::size_t>(nn)] = {x + shift, 0.0};
        --nn;
      } else {
        double y = at(nn - 1, nn - 1);
        double w = at(nn, nn - 1) * at(nn - 1, nn);
        if (l == nn - 1) {
          const double p = 0.5 * (y - x);
          const double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += shift;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            eig[static_cast<std::size_t>(nn - 1)] = {x + z, 0.0};
            eig[static_cast<std::size_t>(nn)] = {z != 0.0 ? x - w / z : x + z, 0.0};
          } else {
            eig[static_cast<std::size_t>(nn - 1)] = {x + p, -z};
            eig[static_cast<std::size_t>(nn)] = {x + p, z};
          }
          nn -= 2;
        } else {
          if (++sweeps > sweep_limit) {
            throw Error(ErrorCode::EigensolverFailure,
                        "QR iteration did not converge within 30*n sweeps (n=" + std::to_string(n) + ")");
          }
          if (its == 10 || its == 20) {
            // Exceptional shift to break cycles.
            shift += x;
            for (int i = 0; i <= nn; ++i) at(i, i) -= x;
            const double s = std::abs(at(nn, nn - 1)) + std::abs(at(nn - 1, nn - 2));
            x = y = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          double p = 0.0;
          double q = 0.0;
          double r = 0.0;
          double z = 0.0;
          for (; m >= l; --m) {
            z = at(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - w) / at(m + 1, m) + at(m, m + 1);
            q = at(m + 1, m + 1) - z - r - s;
            r = at(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(at(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(at(m - 1, m - 1)) + std::abs(z) + std::abs(at(m + 1, m + 1)));
            if (u + v == v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            at(i, i - 2) = 0.0;
            if (i != m + 2) at(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = at(k, k - 1);
              q = at(k + 1, k - 1);
              r = k != nn - 1 ? at(k + 2, k - 1) : 0.0;
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) at(k, k - 1) = -at(k, k - 1);
            } else {
              at(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = at(k, j) + q * at(k + 1, j);
              if (k != nn - 1) {
                p += r * at(k + 2, j);
                at(k + 2, j) -= p * z;
              }
              at(k + 1, j) -= p * y;
              at(k, j) -= p * x;
            }
            const int imax = std::min(nn, k + 3);
            for (int i = l; i <= imax; ++i) {
              p = x * at(i, k) + y * at(i, k + 1);
              if (k != nn - 1) {
                p += z * at(i, k + 2);
                at(i, k + 2) -= p * r;
              }
              at(i, k + 1) -= p * q;
              at(i, k) -= p;
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  return eig;
}

}  // namespace

ComplexList dense_eigenvalues(const DenseMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::InvalidDimension, "eigenvalues need a square matrix");
  if (m.rows() > kEigenDimensionLimit) {
    throw Error(ErrorCode::ResourceLimit, "dense eigensolver limited to dimension 2000");
  }
  if (!m.all_finite()) throw Error(ErrorCode::InvalidInput, "non-finite matrix entry");
  DenseMatrix a = m;
  balance(a);
  to_hessenberg(a);
  return hessenberg_qr(a);
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::InvalidDimension, "symmetric eigenvalues need a square matrix");
  if (asymmetry(m) > 1e-12) throw Error(ErrorCode::InvalidInput, "matrix is not symmetric");
  const std::size_t n = m.rows();
  DenseMatrix a = m;
  double total = 0.0;
  for (double v : a.entries()) total += v * v;
  const double target = 1e-12 * std::sqrt(total);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                    : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  if (off_norm() > target) throw Error(ErrorCode::EigensolverFailure, "Jacobi sweeps did not converge");
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<Complex> inverse_iteration(const DenseMatrix& m, Complex lambda) {
  if (!m.square()) throw Error(ErrorCode::InvalidDimension, "inverse iteration needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return {};

  // Complex LU of (M - lambda I) with partial pivoting; tiny pivots are
  // nudged so the solve amplifies the eigen-direction instead of failing.
  std::vector<Complex> lu(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lu[i * n + j] = m(i, j) - (i == j ? lambda : Complex{});
  double scale = m.max_abs() + std::abs(lambda);
  if (scale == 0.0) scale = 1.0;
  const double floor = std::numeric_limits<double>::epsilon() * scale;

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu[i * n + k]) > std::abs(lu[piv * n + k])) piv = i;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[k * n + j], lu[piv * n + j]);
      std::swap(perm[k], perm[piv]);
    }
    if (std::abs(lu[k * n + k]) < floor) lu[k * n + k] = floor;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex l = lu[i * n + k] / lu[k * n + k];
      lu[i * n + k] = l;
      if (l == Complex{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu[i * n + j] -= l * lu[k * n + j];
    }
  }

  auto solve = [&](const std::vector<Complex>& b) {
    std::vector<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = b[perm[i]];
      for (std::size_t j = 0; j < i; ++j) s -= lu[i * n + j] * x[j];
      x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      Complex s = x[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= lu[i * n + j] * x[j];
      x[i] = s / lu[i * n + i];
    }
    return x;
  };
  auto normalize = [](std::vector<Complex>& x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    const double inv = 1.0 / std::sqrt(s);
    for (auto& v : x) v *= inv;
  };

  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = {1.0 + 0.37 * std::sin(1.3 * static_cast<double>(i + 1)), 0.21 * std::cos(0.7 * static_cast<double>(i))};
  }
  normalize(x);
  for (int it = 0; it < 4; ++it) {
    x = solve(x);
    for (const auto& v : x) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw Error(ErrorCode::EigensolverFailure, "inverse iteration produced a non-finite vector");
      }
    }
    normalize(x);
  }
  return x;
}

}  // namespace mgssp
