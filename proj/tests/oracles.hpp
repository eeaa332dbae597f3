// Test-only reference implementations, kept independent of the library's
// computation paths so checks stay two-route.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "lrp/matrix.hpp"
#include "lrp/random.hpp"

namespace lrp::test {

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
inline std::vector<double> jacobi_eigenvalues(RealMatrix a, double tol = 1e-13) {
  const Eigen::Index n = a.rows();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= tol * scale) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (Eigen::Index i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

/// Seysen measure recomputed from scratch through explicit Gauss-Jordan
/// inversion (no shared code with the library path).
inline double brute_seysen_measure(const RealMatrix& basis) {
  const Eigen::Index n = basis.cols();
  RealMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = basis.col(i).dot(basis.col(j));

  RealMatrix aug(n, 2 * n);
  aug << a, RealMatrix::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(aug(r, col)) > std::abs(aug(pivot, col))) pivot = r;
    }
    aug.row(col).swap(aug.row(pivot));
    aug.row(col) /= aug(col, col);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r != col) aug.row(r) -= aug(r, col) * aug.row(col);
    }
  }
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) s += a(i, i) * aug(i, n + i);
  return s;
}

struct GsData {
  RealMatrix mu;        // strictly lower triangular coefficients
  RealVector norms_sq;  // squared norms of the orthogonalized vectors
};

inline GsData gram_schmidt(const RealMatrix& b) {
  const Eigen::Index n = b.cols();
  GsData g{RealMatrix::Zero(n, n), RealVector::Zero(n)};
  RealMatrix bstar = b;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < k; ++j) {
      g.mu(k, j) = b.col(k).dot(bstar.col(j)) / g.norms_sq(j);
      bstar.col(k) -= g.mu(k, j) * bstar.col(j);
    }
    g.norms_sq(k) = bstar.col(k).squaredNorm();
  }
  return g;
}

inline bool is_size_reduced(const RealMatrix& b, double tol = 1e-9) {
  const GsData g = gram_schmidt(b);
  for (Eigen::Index k = 0; k < b.cols(); ++k)
    for (Eigen::Index j = 0; j < k; ++j)
      if (std::abs(g.mu(k, j)) > 0.5 + tol) return false;
  return true;
}

inline bool satisfies_lovasz(const RealMatrix& b, double delta, double tol = 1e-9) {
  const GsData g = gram_schmidt(b);
  for (Eigen::Index k = 1; k < b.cols(); ++k) {
    const double lhs = g.norms_sq(k) + g.mu(k, k - 1) * g.mu(k, k - 1) * g.norms_sq(k - 1);
    if (lhs < (delta - tol) * g.norms_sq(k - 1)) return false;
  }
  return true;
}

inline RealMatrix random_matrix(RandomStream& rng, Eigen::Index rows, Eigen::Index cols) {
  RealMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.gaussian();
  return m;
}

inline ComplexMatrix random_complex(RandomStream& rng, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = {rng.gaussian() * 0.70710678118654752, rng.gaussian() * 0.70710678118654752};
  return m;
}

/// Real expansion of an n×n complex Gaussian channel (the simulation domain).
inline RealMatrix random_expansion(RandomStream& rng, int n) {
  return complex_to_real_matrix(random_complex(rng, n, n));
}

inline RealMatrix random_spd(RandomStream& rng, Eigen::Index n) {
  const RealMatrix g = random_matrix(rng, n, n);
  return g.transpose() * g + 1e-3 * RealMatrix::Identity(n, n);
}

}  // namespace lrp::test
