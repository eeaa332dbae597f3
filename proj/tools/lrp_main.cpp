// lrp: lattice-reduction experiments from the command line.
//
//   lrp reduce --in basis.csv --algo seysen-greedy --out prefix
//   lrp ber    --config ber.cfg --out ber.csv [--threads N]
//   lrp cdf    --config cdf.cfg --out cdf.csv [--threads N]
//
// Exit codes: 0 ok, 2 parse/config error, 3 rank deficiency, 4 integer
// overflow in the transformation.

#include <cinttypes>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lrp/experiment_io.hpp"
#include "lrp/matrix_io.hpp"
#include "lrp/precoding.hpp"
#include "lrp/reduction.hpp"
#include "lrp/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitSingular = 3;
constexpr int kExitOverflow = 4;

struct ReduceArgs {
  std::string in_path;
  std::string algo;
  std::string out_prefix;
  double lovasz_delta = lrp::kDefaultLovaszDelta;
  std::uint64_t seed = 0;
  std::uint64_t max_iters = lrp::kDefaultMaxIters;
};

struct ExperimentArgs {
  std::string config_path;
  std::string out_path;
  int threads = 0;  // 0: take the config value
};

int run_reduce(const ReduceArgs& args) {
  lrp::Reducer reducer;
  if (args.algo == "seysen-greedy") {
    reducer = lrp::Reducer::kSeysenGreedy;
  } else if (args.algo == "seysen-lazy") {
    reducer = lrp::Reducer::kSeysenLazy;
  } else if (args.algo == "lll") {
    reducer = lrp::Reducer::kLll;
  } else {
    std::fprintf(stderr, "unknown algorithm '%s'\n", args.algo.c_str());
    return kExitParse;
  }
  if (!(args.lovasz_delta > 0.25 && args.lovasz_delta <= 1.0)) {
    std::fprintf(stderr, "--delta must lie in (0.25, 1]\n");
    return kExitParse;
  }

  const lrp::RealMatrix basis = lrp::read_real_matrix_csv(args.in_path);
  lrp::ReducerOptions options;
  options.lovasz_delta = args.lovasz_delta;
  options.max_iters = args.max_iters;
  options.lazy_seed = args.seed;
  const lrp::ReductionOutcome outcome = lrp::run_reducer(basis, reducer, options);

  lrp::write_matrix_csv(args.out_prefix + ".basis.csv", outcome.basis);
  lrp::write_matrix_csv(args.out_prefix + ".T.csv", outcome.t);
  std::printf("iterations=%zu S_initial=%.10g S_final=%.10g detT=%" PRId64
              " pair_evaluations=%zu\n",
              outcome.report.iterations, outcome.report.initial_measure,
              outcome.report.final_measure, lrp::det_integer(outcome.t),
              outcome.report.pair_evaluations);
  if (outcome.report.hit_iteration_cap) {
    std::fprintf(stderr, "warning: iteration cap reached before convergence\n");
  }
  return kExitOk;
}

void print_scheme_complexity(const std::vector<lrp::BerPoint>& points) {
  // Informational counters; the SA/LLL operation ratio is reported, not asserted.
  struct Acc {
    std::uint64_t channels = 0, iters = 0, evals = 0;
  };
  std::map<lrp::SchemeId, Acc> by_scheme;
  for (const auto& p : points) {
    Acc& acc = by_scheme[p.scheme];
    acc.channels += p.channels_used;
    acc.iters += p.reduction_iterations;
    acc.evals += p.pair_evaluations;
  }
  double sa_evals = 0, lll_evals = 0;
  for (const auto& [scheme, acc] : by_scheme) {
    if (acc.iters == 0) continue;
    const double mean_iters = static_cast<double>(acc.iters) / static_cast<double>(acc.channels);
    const double mean_evals = static_cast<double>(acc.evals) / static_cast<double>(acc.channels);
    std::printf("# complexity scheme=%s reductions=%" PRIu64
                " mean_iterations=%.3f mean_pair_evaluations=%.3f\n",
                lrp::scheme_name(scheme).c_str(), acc.channels, mean_iters, mean_evals);
    const std::string name = lrp::scheme_name(scheme);
    if (name.ends_with("-SA")) sa_evals += mean_evals;
    if (name.ends_with("-LLL")) lll_evals += mean_evals;
  }
  if (sa_evals > 0 && lll_evals > 0) {
    std::printf("# complexity sa_over_lll_pair_evaluations=%.3f\n", sa_evals / lll_evals);
  }
}

int run_ber(const ExperimentArgs& args) {
  lrp::SimConfig cfg = lrp::load_sim_config(args.config_path);
  if (args.threads > 0) cfg.threads = static_cast<unsigned>(args.threads);
  const std::vector<lrp::BerPoint> points = lrp::run_ber_sweep(cfg);
  lrp::write_ber_csv(args.out_path, points);
  std::uint64_t resampled = 0, channels = 0;
  for (const auto& p : points) {
    resampled += p.resampled_channels;
    channels += p.channels_used;
  }
  print_scheme_complexity(points);
  std::printf("# wrote %zu points to %s (channels=%" PRIu64 " resampled=%" PRIu64 ")\n",
              points.size(), args.out_path.c_str(), channels, resampled);
  return kExitOk;
}

int run_cdf(const ExperimentArgs& args) {
  lrp::SimConfig cfg = lrp::load_sim_config(args.config_path);
  if (args.threads > 0) cfg.threads = static_cast<unsigned>(args.threads);
  const lrp::ConditionCdf cdf = lrp::run_condition_cdf(cfg);
  lrp::write_cdf_csv(args.out_path, cdf.points);
  const auto mean = [](std::uint64_t v, std::uint64_t n) {
    return n == 0 ? 0.0 : static_cast<double>(v) / static_cast<double>(n);
  };
  std::printf("# complexity reducer=SA reductions=%" PRIu64
              " mean_iterations=%.3f mean_pair_evaluations=%.3f\n",
              cdf.sa.reductions, mean(cdf.sa.iterations, cdf.sa.reductions),
              mean(cdf.sa.pair_evaluations, cdf.sa.reductions));
  std::printf("# complexity reducer=LLL reductions=%" PRIu64
              " mean_iterations=%.3f mean_pair_evaluations=%.3f\n",
              cdf.lll.reductions, mean(cdf.lll.iterations, cdf.lll.reductions),
              mean(cdf.lll.pair_evaluations, cdf.lll.reductions));
  if (cdf.sa.pair_evaluations > 0 && cdf.lll.pair_evaluations > 0) {
    std::printf("# complexity sa_over_lll_pair_evaluations=%.3f\n",
                static_cast<double>(cdf.sa.pair_evaluations) /
                    static_cast<double>(cdf.lll.pair_evaluations));
  }
  std::printf("# wrote %zu rows to %s (resampled=%" PRIu64 ")\n", cdf.points.size(),
              args.out_path.c_str(), cdf.resampled_channels);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seysen/LLL lattice reduction and lattice-reduction-aided precoding experiments"};
  app.require_subcommand(1);

  ReduceArgs reduce_args;
  CLI::App* reduce = app.add_subcommand("reduce", "reduce a basis read from a matrix CSV");
  reduce->add_option("--in", reduce_args.in_path, "input matrix CSV")->required();
  reduce->add_option("--algo", reduce_args.algo, "seysen-greedy | seysen-lazy | lll")->required();
  reduce->add_option("--out", reduce_args.out_prefix, "output prefix")->required();
  reduce->add_option("--delta", reduce_args.lovasz_delta, "Lovász parameter for lll");
  reduce->add_option("--seed", reduce_args.seed, "seed for seysen-lazy");
  reduce->add_option("--max-iters", reduce_args.max_iters, "iteration cap");

  ExperimentArgs ber_args;
  CLI::App* ber = app.add_subcommand("ber", "run a BER sweep from a config file");
  ber->add_option("--config", ber_args.config_path, "key=value config")->required();
  ber->add_option("--out", ber_args.out_path, "output CSV")->required();
  ber->add_option("--threads", ber_args.threads, "worker threads (overrides config)");

  ExperimentArgs cdf_args;
  CLI::App* cdf = app.add_subcommand("cdf", "condition-number CDF experiment");
  cdf->add_option("--config", cdf_args.config_path, "key=value config")->required();
  cdf->add_option("--out", cdf_args.out_path, "output CSV")->required();
  cdf->add_option("--threads", cdf_args.threads, "worker threads (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? kExitOk : kExitParse;
  }

  try {
    if (reduce->parsed()) return run_reduce(reduce_args);
    if (ber->parsed()) return run_ber(ber_args);
    if (cdf->parsed()) return run_cdf(cdf_args);
  } catch (const lrp::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const lrp::SingularityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSingular;
  } catch (const lrp::OverflowError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitOverflow;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  }
  return kExitParse;
}
