#include "lrp/matrix.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace lrp {

bool is_finite(const RealMatrix& m) { return m.allFinite(); }

bool is_finite(const ComplexMatrix& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

RealMatrix complex_to_real_matrix(const ComplexMatrix& hc) {
  const Eigen::Index r = hc.rows(), c = hc.cols();
  RealMatrix out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = hc.real();
  out.topRightCorner(r, c) = -hc.imag();
  out.bottomLeftCorner(r, c) = hc.imag();
  out.bottomRightCorner(r, c) = hc.real();
  return out;
}

RealMatrix complex_to_real_vector(const ComplexMatrix& v) {
  if (v.cols() != 1) {
    throw DimensionError("complex_to_real_vector: input must be a column");
  }
  RealMatrix out(2 * v.rows(), 1);
  out.topRows(v.rows()) = v.real();
  out.bottomRows(v.rows()) = v.imag();
  return out;
}

RealMatrix gram(const RealMatrix& b) { return b.transpose() * b; }

RealMatrix invert_spd(const RealMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("invert_spd: matrix must be square");
  }
  Eigen::LDLT<RealMatrix> ldlt(a);
  const RealVector d = ldlt.vectorD();
  const double scale = d.cwiseAbs().maxCoeff();
  if (ldlt.info() != Eigen::Success || scale <= 0.0 ||
      d.minCoeff() <= 1e-12 * scale) {
    throw SingularityError("invert_spd: matrix is not positive definite");
  }
  return ldlt.solve(RealMatrix::Identity(a.rows(), a.cols()));
}

RealMatrix pseudo_inverse(const RealMatrix& b) {
  if (b.rows() < b.cols()) {
    // full row rank: B† = Bᵀ (B Bᵀ)⁻¹
    return b.transpose() * invert_spd(b * b.transpose());
  }
  // full column rank: B† = (Bᵀ B)⁻¹ Bᵀ
  return invert_spd(b.transpose() * b) * b.transpose();
}

std::vector<double> singular_values(const RealMatrix& b) {
  Eigen::JacobiSVD<RealMatrix> svd(b);
  const RealVector& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

double condition_number(const RealMatrix& b) {
  const std::vector<double> sv = singular_values(b);
  const double smax = sv.front(), smin = sv.back();
  if (!(smin > smax * 1e-14) || smax == 0.0) {
    throw SingularityError("condition_number: smallest singular value vanishes");
  }
  return smax / smin;
}

double trace_inverse_gram(const RealMatrix& b) {
  return invert_spd(gram(b)).trace();
}

}  // namespace lrp
