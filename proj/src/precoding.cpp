#include "lrp/precoding.hpp"

#include <cmath>

namespace lrp {
namespace {

void require_square_even(const RealMatrix& hr) {
  if (hr.rows() != hr.cols() || hr.rows() < 2 || hr.rows() % 2 != 0) {
    throw DimensionError("channel must be a square real expansion (even dimension)");
  }
}

IntVector parity_from_t_inv(const IntMatrix& t_inv) {
  // (T⁻ᵀ·1)_i is the i-th column sum of T⁻¹.
  const Eigen::Index n = t_inv.cols();
  IntVector parity(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    __int128 sum = 0;
    for (Eigen::Index r = 0; r < n; ++r) sum += t_inv(r, c);
    parity(c) = static_cast<std::int64_t>(((sum % 2) + 2) % 2);
  }
  return parity;
}

PrecoderPlan linear_plan(const RealMatrix& heff, int n_t) {
  PrecoderPlan plan;
  plan.beta = beta_scale(heff, n_t);
  plan.w = plan.beta * pseudo_inverse(heff).topRows(2 * n_t);
  const Eigen::Index n = heff.rows();
  plan.t = IntMatrix::Identity(n, n);
  plan.parity_offset = IntVector::Ones(n);
  return plan;
}

PrecoderPlan reduced_plan(int n_t, ReductionOutcome&& red) {
  // red reduced heffᵀ, so the reduced effective channel is the transpose of
  // the reduced basis: H̃ = Tᵀ·Heff.
  PrecoderPlan plan;
  const RealMatrix heff = red.basis.transpose();
  plan.beta = beta_scale(heff, n_t);
  plan.w = plan.beta * pseudo_inverse(heff).topRows(2 * n_t);
  plan.t = std::move(red.t);
  plan.parity_offset = parity_from_t_inv(red.t_inv);
  plan.reduction = std::move(red.report);
  return plan;
}

RealMatrix apply_plan_checked(const PrecoderPlan& plan, const RealMatrix& s) {
  if (s.cols() != 1 || s.rows() != plan.w.cols()) {
    throw DimensionError("symbol vector shape does not match the channel");
  }
  return plan.w * s;
}

PrecodeResult result_from(const PrecoderPlan& plan, const RealMatrix& s) {
  return PrecodeResult{apply_plan_checked(plan, s), plan.beta, plan.t, plan.parity_offset};
}

}  // namespace

double beta_scale(const RealMatrix& heff, int n_t) {
  return std::sqrt(static_cast<double>(n_t) / trace_inverse_gram(heff.transpose()));
}

RealMatrix mmse_extend(const RealMatrix& hr, double sigma_n) {
  if (sigma_n < 0.0) throw DimensionError("noise level must be non-negative");
  const Eigen::Index rows = hr.rows();
  RealMatrix ext(rows, hr.cols() + rows);
  ext.leftCols(hr.cols()) = hr;
  ext.rightCols(rows) = sigma_n * RealMatrix::Identity(rows, rows);
  return ext;
}

PrecoderPlan plan_zf(const RealMatrix& hr) {
  require_square_even(hr);
  return linear_plan(hr, static_cast<int>(hr.rows() / 2));
}

PrecoderPlan plan_mmse(const RealMatrix& hr, double sigma_n) {
  require_square_even(hr);
  return linear_plan(mmse_extend(hr, sigma_n), static_cast<int>(hr.rows() / 2));
}

PrecoderPlan plan_lra_zf(const RealMatrix& hr, Reducer reducer,
                         const ReducerOptions& options) {
  require_square_even(hr);
  return reduced_plan(static_cast<int>(hr.rows() / 2),
                      run_reducer(hr.transpose(), reducer, options));
}

PrecoderPlan plan_lra_mmse(const RealMatrix& hr, double sigma_n, Reducer reducer,
                           const ReducerOptions& options) {
  require_square_even(hr);
  const RealMatrix ext = mmse_extend(hr, sigma_n);
  return reduced_plan(static_cast<int>(hr.rows() / 2),
                      run_reducer(ext.transpose(), reducer, options));
}

PrecoderPlan make_plan(SchemeId scheme, const RealMatrix& hr, double sigma_n,
                       const ReducerOptions& options) {
  switch (scheme) {
    case SchemeId::kZf:
      return plan_zf(hr);
    case SchemeId::kMmse:
      return plan_mmse(hr, sigma_n);
    case SchemeId::kLraZfSa:
      return plan_lra_zf(hr, Reducer::kSeysenGreedy, options);
    case SchemeId::kLraZfLll:
      return plan_lra_zf(hr, Reducer::kLll, options);
    case SchemeId::kLraMmseSa:
      return plan_lra_mmse(hr, sigma_n, Reducer::kSeysenGreedy, options);
    case SchemeId::kLraMmseLll:
      return plan_lra_mmse(hr, sigma_n, Reducer::kLll, options);
  }
  throw DimensionError("unknown scheme");
}

PrecodeResult zf_precode(const RealMatrix& hr, const RealMatrix& s) {
  return result_from(plan_zf(hr), s);
}

PrecodeResult lra_zf_precode(const RealMatrix& hr, const RealMatrix& s, Reducer reducer,
                             const ReducerOptions& options) {
  return result_from(plan_lra_zf(hr, reducer, options), s);
}

PrecodeResult mmse_precode(const RealMatrix& hr, const RealMatrix& s, double sigma_n) {
  return result_from(plan_mmse(hr, sigma_n), s);
}

PrecodeResult lra_mmse_precode(const RealMatrix& hr, const RealMatrix& s, double sigma_n,
                               Reducer reducer, const ReducerOptions& options) {
  return result_from(plan_lra_mmse(hr, sigma_n, reducer, options), s);
}

RealMatrix lattice_decode(const RealMatrix& y, double beta, const IntMatrix& t,
                          const IntVector& parity_offset) {
  if (!(beta > 0.0)) throw DimensionError("beta must be positive");
  const Eigen::Index n = y.rows();
  if (y.cols() != 1 || t.rows() != n || t.cols() != n || parity_offset.rows() != n) {
    throw DimensionError("lattice_decode: shape mismatch");
  }
  // Nearest integer of the required parity, per component.
  RealVector z(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = static_cast<double>(parity_offset(i));
    z(i) = p + 2.0 * static_cast<double>(std::llround((y(i, 0) / beta - p) / 2.0));
  }
  RealMatrix s_hat = t.cast<double>().transpose() * z;
  for (Eigen::Index i = 0; i < n; ++i) s_hat(i, 0) = s_hat(i, 0) > 0.0 ? 1.0 : -1.0;
  return s_hat;
}

}  // namespace lrp
