#pragma once

#include <cstdint>

#include "lrp/matrix.hpp"
#include "lrp/reduction.hpp"

namespace lrp {

enum class SchemeId { kZf, kMmse, kLraZfSa, kLraZfLll, kLraMmseSa, kLraMmseLll };

struct PrecodeResult {
  RealMatrix x;             // 2·N_T × 1 transmit vector (real-valued model)
  double beta = 0.0;        // power scale
  IntMatrix t;              // unimodular transform (identity for linear schemes)
  IntVector parity_offset;  // (T⁻ᵀ·1) mod 2, one 0/1 entry per dimension
};

/// Channel-dependent part of a precoder: x = w·s per frame, with the
/// receiver-side transform and parity carried along.
struct PrecoderPlan {
  RealMatrix w;
  double beta = 0.0;
  IntMatrix t;
  IntVector parity_offset;
  ReductionReport reduction;  // zeroed for linear schemes
};

/// Power scale of Eq-16 form: sqrt(N_T / trace((Heff·Heffᵀ)⁻¹)), evaluated on
/// the real-valued effective channel.
double beta_scale(const RealMatrix& heff, int n_t);

/// [Hr | sigma_n·I] with the identity block sized to the row count.
RealMatrix mmse_extend(const RealMatrix& hr, double sigma_n);

PrecoderPlan plan_zf(const RealMatrix& hr);
PrecoderPlan plan_mmse(const RealMatrix& hr, double sigma_n);
PrecoderPlan plan_lra_zf(const RealMatrix& hr, Reducer reducer,
                         const ReducerOptions& options = {});
PrecoderPlan plan_lra_mmse(const RealMatrix& hr, double sigma_n, Reducer reducer,
                           const ReducerOptions& options = {});

/// Plan for one of the six simulated schemes; sigma_n is consumed by the
/// MMSE-based schemes only, SA schemes use greedy selection.
PrecoderPlan make_plan(SchemeId scheme, const RealMatrix& hr, double sigma_n,
                       const ReducerOptions& options = {});

PrecodeResult zf_precode(const RealMatrix& hr, const RealMatrix& s);
PrecodeResult lra_zf_precode(const RealMatrix& hr, const RealMatrix& s, Reducer reducer,
                             const ReducerOptions& options = {});
PrecodeResult mmse_precode(const RealMatrix& hr, const RealMatrix& s, double sigma_n);
PrecodeResult lra_mmse_precode(const RealMatrix& hr, const RealMatrix& s, double sigma_n,
                               Reducer reducer, const ReducerOptions& options = {});

/// Receiver decision: parity-constrained integer rounding of y/beta in the
/// reduced domain, back-transform by Tᵀ, then clamp to the ±1 alphabet.
RealMatrix lattice_decode(const RealMatrix& y, double beta, const IntMatrix& t,
                          const IntVector& parity_offset);

}  // namespace lrp
