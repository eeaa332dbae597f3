#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "lrp/errors.hpp"

namespace lrp {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using RealVector = Eigen::VectorXd;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// True when every entry is finite (no NaN/Inf).
bool is_finite(const RealMatrix& m);
bool is_finite(const ComplexMatrix& m);

/// Real expansion of a complex matrix: [[Re, -Im], [Im, Re]].
/// The map is a ring homomorphism, so products expand to products.
RealMatrix complex_to_real_matrix(const ComplexMatrix& hc);

/// Real expansion of a complex column: Re stacked above Im.
RealMatrix complex_to_real_vector(const ComplexMatrix& v);

/// Gram matrix BᵀB of the columns of B.
RealMatrix gram(const RealMatrix& b);

/// Inverse of a symmetric positive definite matrix via pivoted LDLᵀ.
/// Throws SingularityError when a pivot falls below 1e-12 of the leading scale.
RealMatrix invert_spd(const RealMatrix& a);

/// Moore-Penrose pseudo-inverse for full row rank (wide) or full column rank
/// (tall/square) input, via the normal equations.
RealMatrix pseudo_inverse(const RealMatrix& b);

/// Singular values in descending order.
std::vector<double> singular_values(const RealMatrix& b);

/// Ratio of largest to smallest singular value. Throws on singular input.
double condition_number(const RealMatrix& b);

/// trace((BᵀB)⁻¹). Throws SingularityError when the Gram matrix is singular.
double trace_inverse_gram(const RealMatrix& b);

}  // namespace lrp
