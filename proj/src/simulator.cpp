#include "lrp/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>

namespace lrp {
namespace {

constexpr int kMaxResampleAttempts = 64;

struct ChannelDraw {
  RealMatrix hr;
  std::uint64_t resamples = 0;
};

// Draws the channel for one index, replacing singular samples from derived
// attempt streams so results stay schedule-independent.
template <typename PlanFn>
auto plan_channel(const SimConfig& cfg, std::uint64_t channel_index, PlanFn&& make,
                  std::uint64_t* resampled) {
  for (int attempt = 0;; ++attempt) {
    RandomStream rng = RandomStream::derive(
        cfg.seed, {kStreamChannel, channel_index, static_cast<std::uint64_t>(attempt)});
    const ComplexMatrix hc = gen_channel(rng, cfg.n_r, cfg.n_t);
    const RealMatrix hr = complex_to_real_matrix(hc);
    try {
      return std::make_pair(make(hr), hr);
    } catch (const SingularityError&) {
      if (attempt + 1 >= kMaxResampleAttempts) throw;
      if (resampled != nullptr) ++*resampled;
    }
  }
}

void validate(const SimConfig& cfg) {
  if (cfg.n_t < 1 || cfg.n_t != cfg.n_r) {
    throw DimensionError("simulator requires n_t = n_r >= 1");
  }
  for (double snr : cfg.snr_grid_db) {
    if (!std::isfinite(snr)) throw DimensionError("SNR grid entries must be finite");
  }
}

unsigned effective_threads(const SimConfig& cfg, std::size_t tasks) {
  const unsigned requested = std::max(1u, cfg.threads);
  return static_cast<unsigned>(std::min<std::size_t>(requested, std::max<std::size_t>(tasks, 1)));
}

// Runs fn(task_index) for every index with a fixed-size worker pool; each
// task writes only its own slot, so any schedule yields the same output.
void parallel_tasks(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

ComplexMatrix gen_channel(RandomStream& rng, int n_r, int n_t) {
  constexpr double kHalfSqrt = 0.70710678118654752;  // sqrt(1/2)
  ComplexMatrix h(n_r, n_t);
  for (int r = 0; r < n_r; ++r) {
    for (int c = 0; c < n_t; ++c) {
      const double re = kHalfSqrt * rng.gaussian();
      const double im = kHalfSqrt * rng.gaussian();
      h(r, c) = {re, im};
    }
  }
  return h;
}

ComplexMatrix qam4_modulate(const std::vector<std::uint8_t>& bits) {
  if (bits.size() % 2 != 0) throw DimensionError("4QAM needs an even bit count");
  ComplexMatrix s(bits.size() / 2, 1);
  for (std::size_t k = 0; k < bits.size() / 2; ++k) {
    s(static_cast<Eigen::Index>(k), 0) = {1.0 - 2.0 * bits[2 * k],
                                          1.0 - 2.0 * bits[2 * k + 1]};
  }
  return s;
}

std::vector<std::uint8_t> qam4_demodulate(const RealMatrix& s_hat) {
  if (s_hat.cols() != 1 || s_hat.rows() % 2 != 0) {
    throw DimensionError("demodulator expects a 2n×1 real column");
  }
  const Eigen::Index n = s_hat.rows() / 2;
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(2 * n));
  for (Eigen::Index k = 0; k < n; ++k) {
    bits[static_cast<std::size_t>(2 * k)] = s_hat(k, 0) > 0.0 ? 0 : 1;
    bits[static_cast<std::size_t>(2 * k + 1)] = s_hat(n + k, 0) > 0.0 ? 0 : 1;
  }
  return bits;
}

double snr_to_sigma(double snr_db, int n_t, SigmaMode mode) {
  const double power = mode == SigmaMode::kTxPower ? static_cast<double>(n_t) : 0.5;
  const double complex_variance = power * std::pow(10.0, -snr_db / 10.0);
  return std::sqrt(complex_variance / 2.0);
}

BerPoint run_ber_point_at_sigma(const SimConfig& cfg, SchemeId scheme, double snr_db,
                                double sigma_real) {
  validate(cfg);
  BerPoint point;
  point.scheme = scheme;
  point.snr_db = snr_db;

  ReducerOptions opt;
  opt.lovasz_delta = cfg.lovasz_delta;
  opt.max_iters = cfg.max_reduction_iters;

  const std::size_t bits_per_frame = static_cast<std::size_t>(2 * cfg.n_t);
  std::vector<std::uint8_t> bits(bits_per_frame);

  for (std::uint64_t ch = 0; ch < cfg.n_channels; ++ch) {
    auto [plan, hr] = plan_channel(
        cfg, ch, [&](const RealMatrix& h) { return make_plan(scheme, h, sigma_real, opt); },
        &point.resampled_channels);
    ++point.channels_used;
    point.reduction_iterations += plan.reduction.iterations;
    point.pair_evaluations += plan.reduction.pair_evaluations;

    for (std::uint64_t fr = 0; fr < cfg.frames_per_channel; ++fr) {
      RandomStream bits_rng = RandomStream::derive(cfg.seed, {kStreamBits, ch, fr});
      for (auto& b : bits) b = static_cast<std::uint8_t>(bits_rng.bit());
      const RealMatrix s = complex_to_real_vector(qam4_modulate(bits));

      const RealMatrix x = plan.w * s;
      RealMatrix y = hr * x;
      if (sigma_real > 0.0) {
        RandomStream noise_rng = RandomStream::derive(cfg.seed, {kStreamNoise, ch, fr});
        for (Eigen::Index i = 0; i < y.rows(); ++i) {
          y(i, 0) += sigma_real * noise_rng.gaussian();
        }
      }
      const RealMatrix s_hat = lattice_decode(y, plan.beta, plan.t, plan.parity_offset);
      const std::vector<std::uint8_t> bits_hat = qam4_demodulate(s_hat);
      for (std::size_t i = 0; i < bits.size(); ++i) {
        point.bit_errors += bits[i] != bits_hat[i];
      }
      point.bits_sent += bits.size();
    }
    if (point.bit_errors >= cfg.min_errors && point.channels_used >= cfg.min_channels) {
      break;
    }
  }

  if (point.bits_sent > 0) {
    point.ber = static_cast<double>(point.bit_errors) / static_cast<double>(point.bits_sent);
    point.ci95_halfwidth =
        1.96 * std::sqrt(point.ber * (1.0 - point.ber) / static_cast<double>(point.bits_sent));
  }
  return point;
}

BerPoint run_ber_point(const SimConfig& cfg, SchemeId scheme, double snr_db) {
  return run_ber_point_at_sigma(cfg, scheme, snr_db,
                                snr_to_sigma(snr_db, cfg.n_t, cfg.sigma_mode));
}

std::vector<BerPoint> run_ber_sweep(const SimConfig& cfg) {
  validate(cfg);
  const std::size_t count = cfg.schemes.size() * cfg.snr_grid_db.size();
  std::vector<BerPoint> points(count);
  parallel_tasks(count, effective_threads(cfg, count), [&](std::size_t idx) {
    const SchemeId scheme = cfg.schemes[idx / cfg.snr_grid_db.size()];
    const double snr = cfg.snr_grid_db[idx % cfg.snr_grid_db.size()];
    points[idx] = run_ber_point(cfg, scheme, snr);
  });
  return points;
}

namespace {

struct KappaTriple {
  double raw = 0.0;
  double sa = 0.0;
  double lll = 0.0;
  ComplexityStats sa_stats;
  ComplexityStats lll_stats;
};

KappaTriple kappa_triple(const RealMatrix& hr, const ReducerOptions& opt) {
  KappaTriple k;
  k.raw = condition_number(hr);
  ReductionOutcome sa = reduce_greedy(hr.transpose(), opt.max_iters);
  ReductionOutcome lll = lll_reduce(hr.transpose(), opt.lovasz_delta, opt.max_iters);
  k.sa = condition_number(sa.basis);
  k.lll = condition_number(lll.basis);
  k.sa_stats = {1, sa.report.iterations, sa.report.pair_evaluations};
  k.lll_stats = {1, lll.report.iterations, lll.report.pair_evaluations};
  return k;
}

ConditionCdf assemble_cdf(std::vector<KappaTriple>&& triples, std::uint64_t resampled) {
  ConditionCdf out;
  out.resampled_channels = resampled;
  const std::size_t n = triples.size();
  std::vector<double> raw(n), sa(n), lll(n);
  for (std::size_t i = 0; i < n; ++i) {
    raw[i] = triples[i].raw;
    sa[i] = triples[i].sa;
    lll[i] = triples[i].lll;
    out.sa.reductions += triples[i].sa_stats.reductions;
    out.sa.iterations += triples[i].sa_stats.iterations;
    out.sa.pair_evaluations += triples[i].sa_stats.pair_evaluations;
    out.lll.reductions += triples[i].lll_stats.reductions;
    out.lll.iterations += triples[i].lll_stats.iterations;
    out.lll.pair_evaluations += triples[i].lll_stats.pair_evaluations;
  }
  for (auto* series : {&raw, &sa, &lll}) std::sort(series->begin(), series->end());
  out.points.reserve(3 * n);
  const auto emit = [&](ReducerTag tag, const std::vector<double>& series) {
    for (std::size_t i = 0; i < n; ++i) {
      out.points.push_back(CdfPoint{tag, series[i],
                                    static_cast<double>(i + 1) / static_cast<double>(n)});
    }
  };
  emit(ReducerTag::kNone, raw);
  emit(ReducerTag::kSa, sa);
  emit(ReducerTag::kLll, lll);
  return out;
}

}  // namespace

ConditionCdf run_condition_cdf(const SimConfig& cfg) {
  validate(cfg);
  ReducerOptions opt;
  opt.lovasz_delta = cfg.lovasz_delta;
  opt.max_iters = cfg.max_reduction_iters;

  std::vector<KappaTriple> triples(cfg.n_channels);
  std::vector<std::uint64_t> resamples(cfg.n_channels, 0);
  parallel_tasks(cfg.n_channels, effective_threads(cfg, cfg.n_channels), [&](std::size_t ch) {
    auto [triple, hr] = plan_channel(
        cfg, ch, [&](const RealMatrix& h) { return kappa_triple(h, opt); }, &resamples[ch]);
    (void)hr;
    triples[ch] = triple;
  });
  std::uint64_t resampled = 0;
  for (std::uint64_t r : resamples) resampled += r;
  return assemble_cdf(std::move(triples), resampled);
}

ConditionCdf condition_cdf_for_channels(const std::vector<ComplexMatrix>& channels,
                                        const SimConfig& cfg) {
  ReducerOptions opt;
  opt.lovasz_delta = cfg.lovasz_delta;
  opt.max_iters = cfg.max_reduction_iters;
  std::vector<KappaTriple> triples(channels.size());
  for (std::size_t i = 0; i < channels.size(); ++i) {
    triples[i] = kappa_triple(complex_to_real_matrix(channels[i]), opt);
  }
  return assemble_cdf(std::move(triples), 0);
}

}  // namespace lrp
