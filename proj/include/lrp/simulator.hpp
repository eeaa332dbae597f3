#pragma once

#include <cstdint>
#include <vector>

#include "lrp/matrix.hpp"
#include "lrp/precoding.hpp"
#include "lrp/random.hpp"

namespace lrp {

enum class SigmaMode { kTxPower, kPerBit };

struct SimConfig {
  int n_t = 4;
  int n_r = 4;
  std::vector<double> snr_grid_db;
  std::vector<SchemeId> schemes;
  std::size_t n_channels = 10000;
  std::size_t frames_per_channel = 10;
  std::size_t min_errors = 200;
  std::size_t min_channels = 1000;
  std::uint64_t seed = 1;
  SigmaMode sigma_mode = SigmaMode::kTxPower;
  double lovasz_delta = kDefaultLovaszDelta;
  std::size_t max_reduction_iters = kDefaultMaxIters;
  unsigned threads = 1;
};

struct BerPoint {
  SchemeId scheme = SchemeId::kZf;
  double snr_db = 0.0;
  std::uint64_t bits_sent = 0;
  std::uint64_t bit_errors = 0;
  double ber = 0.0;
  double ci95_halfwidth = 0.0;
  // informational complexity/bookkeeping counters, not part of the CSV row
  std::uint64_t channels_used = 0;
  std::uint64_t resampled_channels = 0;
  std::uint64_t reduction_iterations = 0;
  std::uint64_t pair_evaluations = 0;
};

enum class ReducerTag { kNone, kSa, kLll };

struct CdfPoint {
  ReducerTag reducer = ReducerTag::kNone;
  double kappa = 1.0;
  double cdf = 0.0;
};

struct ComplexityStats {
  std::uint64_t reductions = 0;
  std::uint64_t iterations = 0;
  std::uint64_t pair_evaluations = 0;
};

struct ConditionCdf {
  std::vector<CdfPoint> points;  // grouped none, SA, LLL; kappa ascending
  ComplexityStats sa;
  ComplexityStats lll;
  std::uint64_t resampled_channels = 0;
};

// Stream derivation: every work unit draws from
// RandomStream::derive(seed, {purpose, channel_index, extra}) with the
// purposes below, which keeps results independent of thread schedule.
inline constexpr std::uint64_t kStreamChannel = 1;  // extra = resample attempt
inline constexpr std::uint64_t kStreamBits = 2;     // extra = frame index
inline constexpr std::uint64_t kStreamNoise = 3;    // extra = frame index

/// i.i.d. circularly-symmetric complex Gaussian entries of unit variance
/// (real and imaginary parts N(0, 1/2), drawn row-major, real part first).
ComplexMatrix gen_channel(RandomStream& rng, int n_r, int n_t);

/// Gray-mapped 4QAM: bit pair (b0, b1) -> (1-2·b0) + (1-2·b1)·j.
ComplexMatrix qam4_modulate(const std::vector<std::uint8_t>& bits);

/// Inverse mapping on the real-valued model (Re block above Im block);
/// component <= 0 decodes to bit 1.
std::vector<std::uint8_t> qam4_demodulate(const RealMatrix& s_hat);

/// Real-model per-component noise standard deviation for an SNR point.
/// tx-power mode: complex noise variance N_T/10^(snr/10) per receiver.
/// per-bit mode:  complex noise variance 0.5/10^(snr/10) (Eb = 1/2 per bit).
double snr_to_sigma(double snr_db, int n_t, SigmaMode mode = SigmaMode::kTxPower);

/// One Monte-Carlo BER point at an explicit real-model noise level.
BerPoint run_ber_point_at_sigma(const SimConfig& cfg, SchemeId scheme, double snr_db,
                                double sigma_real);

BerPoint run_ber_point(const SimConfig& cfg, SchemeId scheme, double snr_db);

/// Cartesian product cfg.schemes × cfg.snr_grid_db, scheme-major, computed
/// with cfg.threads workers; output order and content do not depend on the
/// thread count.
std::vector<BerPoint> run_ber_sweep(const SimConfig& cfg);

/// Condition-number CDF of raw vs SA-reduced vs LLL-reduced channels.
ConditionCdf run_condition_cdf(const SimConfig& cfg);

/// CDF series for an explicit channel list (test hook).
ConditionCdf condition_cdf_for_channels(const std::vector<ComplexMatrix>& channels,
                                        const SimConfig& cfg);

}  // namespace lrp
