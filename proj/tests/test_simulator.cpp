#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lrp/experiment_io.hpp"
#include "lrp/simulator.hpp"

using namespace lrp;

namespace {

SimConfig small_config() {
  SimConfig cfg;
  cfg.n_t = 4;
  cfg.n_r = 4;
  cfg.n_channels = 400;
  cfg.frames_per_channel = 10;
  cfg.min_errors = 100;
  cfg.min_channels = 100;
  cfg.seed = 99;
  return cfg;
}

}  // namespace

TEST_CASE("gen_channel statistics and determinism") {
  RandomStream a(5), b(5);
  const ComplexMatrix h1 = gen_channel(a, 4, 4);
  const ComplexMatrix h2 = gen_channel(b, 4, 4);
  CHECK((h1 - h2).cwiseAbs().maxCoeff() == 0.0);

  RandomStream rng(6);
  double power = 0.0, cross = 0.0;
  const int draws = 100000 / 16;
  for (int i = 0; i < draws; ++i) {
    const ComplexMatrix h = gen_channel(rng, 4, 4);
    power += h.cwiseAbs2().sum();
    cross += (h.real().array() * h.imag().array()).sum();
  }
  const double n_entries = 16.0 * draws;
  CHECK(power / n_entries == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(cross / n_entries) < 0.01);
}

TEST_CASE("qam4 mapping") {
  const ComplexMatrix s = qam4_modulate({0, 0, 1, 1, 0, 1});
  CHECK(s(0, 0) == std::complex<double>(1, 1));
  CHECK(s(1, 0) == std::complex<double>(-1, -1));
  CHECK(s(2, 0) == std::complex<double>(1, -1));

  CHECK_THROWS_AS(qam4_modulate({0, 1, 0}), DimensionError);
}

TEST_CASE("qam4 round trip and tie rule") {
  RandomStream rng(8);
  std::vector<std::uint8_t> bits(10000);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
  const RealMatrix expanded = complex_to_real_vector(qam4_modulate(bits));
  CHECK(qam4_demodulate(expanded) == bits);

  // sign flip complements every bit
  std::vector<std::uint8_t> flipped = qam4_demodulate(-expanded);
  for (std::size_t i = 0; i < bits.size(); ++i) CHECK(flipped[i] == 1 - bits[i]);

  RealMatrix zero = RealMatrix::Zero(2, 1);
  const std::vector<std::uint8_t> tie = qam4_demodulate(zero);
  CHECK(tie[0] == 1);
  CHECK(tie[1] == 1);
}

TEST_CASE("snr_to_sigma") {
  // 0 dB at N_T = 4: complex variance 4, real per-component std sqrt(2)
  CHECK(snr_to_sigma(0.0, 4) == doctest::Approx(std::sqrt(2.0)));
  CHECK(snr_to_sigma(0.0, 4, SigmaMode::kPerBit) == doctest::Approx(0.5));
  CHECK(snr_to_sigma(200.0, 4) < 1e-9);
  double prev = snr_to_sigma(-10.0, 4);
  for (double snr = -5.0; snr <= 30.0; snr += 5.0) {
    const double cur = snr_to_sigma(snr, 4);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("ber point is noiseless-exact and noise-dominated-correct") {
  SimConfig cfg = small_config();
  cfg.n_channels = 200;
  for (SchemeId scheme :
       {SchemeId::kZf, SchemeId::kMmse, SchemeId::kLraZfSa, SchemeId::kLraZfLll,
        SchemeId::kLraMmseSa, SchemeId::kLraMmseLll}) {
    const BerPoint p = run_ber_point_at_sigma(cfg, scheme, 1e9, 0.0);
    CHECK(p.bit_errors == 0);
    CHECK(p.ber == 0.0);
  }

  cfg.n_channels = 800;
  cfg.min_errors = 2000;
  const BerPoint noisy = run_ber_point(cfg, SchemeId::kZf, -30.0);
  CHECK(noisy.ber == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("ber point determinism") {
  const SimConfig cfg = small_config();
  const BerPoint a = run_ber_point(cfg, SchemeId::kLraZfSa, 12.0);
  const BerPoint b = run_ber_point(cfg, SchemeId::kLraZfSa, 12.0);
  CHECK(a.bits_sent == b.bits_sent);
  CHECK(a.bit_errors == b.bit_errors);
  CHECK(a.ber == b.ber);
  CHECK(a.resampled_channels == 0);
}

TEST_CASE("ber sweep shape, order, and thread independence") {
  SimConfig cfg = small_config();
  cfg.schemes = {SchemeId::kZf, SchemeId::kLraZfLll};
  cfg.snr_grid_db = {5.0, 10.0, 15.0};

  SimConfig empty = cfg;
  empty.snr_grid_db.clear();
  CHECK(run_ber_sweep(empty).empty());

  cfg.threads = 1;
  const std::vector<BerPoint> seq = run_ber_sweep(cfg);
  cfg.threads = 4;
  const std::vector<BerPoint> par = run_ber_sweep(cfg);
  REQUIRE(seq.size() == 6);
  REQUIRE(par.size() == 6);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].scheme == par[i].scheme);
    CHECK(seq[i].snr_db == par[i].snr_db);
    CHECK(seq[i].bits_sent == par[i].bits_sent);
    CHECK(seq[i].bit_errors == par[i].bit_errors);
  }
  // scheme-major ordering
  CHECK(seq[0].scheme == SchemeId::kZf);
  CHECK(seq[2].scheme == SchemeId::kZf);
  CHECK(seq[3].scheme == SchemeId::kLraZfLll);
  CHECK(seq[0].snr_db == 5.0);
  CHECK(seq[1].snr_db == 10.0);
}

TEST_CASE("ber decreases with SNR and LRA schemes win at moderate SNR") {
  SimConfig cfg = small_config();
  cfg.n_channels = 2500;
  cfg.min_errors = 150;
  cfg.threads = 2;

  const BerPoint zf = run_ber_point(cfg, SchemeId::kZf, 15.0);
  const BerPoint sa = run_ber_point(cfg, SchemeId::kLraZfSa, 15.0);
  const BerPoint lll = run_ber_point(cfg, SchemeId::kLraZfLll, 15.0);
  CHECK(sa.ber <= lll.ber + lll.ci95_halfwidth + sa.ci95_halfwidth);
  CHECK(lll.ber <= zf.ber + zf.ci95_halfwidth + lll.ci95_halfwidth);
  CHECK(sa.ber < zf.ber);

  const BerPoint low = run_ber_point(cfg, SchemeId::kZf, 5.0);
  CHECK(zf.ber < low.ber);
}

TEST_CASE("condition cdf") {
  SimConfig cfg = small_config();
  cfg.n_channels = 300;
  cfg.threads = 2;
  const ConditionCdf cdf = run_condition_cdf(cfg);
  REQUIRE(cdf.points.size() == 3 * cfg.n_channels);
  CHECK(cdf.resampled_channels == 0);

  double last_cdf = 0.0, last_kappa = 0.0;
  ReducerTag last_tag = ReducerTag::kNone;
  std::vector<double> medians;
  for (std::size_t i = 0; i < cdf.points.size(); ++i) {
    const CdfPoint& p = cdf.points[i];
    CHECK(p.kappa >= 1.0 - 1e-12);
    CHECK(p.cdf > 0.0);
    CHECK(p.cdf <= 1.0);
    if (i > 0 && p.reducer == last_tag) {
      CHECK(p.cdf >= last_cdf);
      CHECK(p.kappa >= last_kappa);
    }
    last_tag = p.reducer;
    last_cdf = p.cdf;
    last_kappa = p.kappa;
  }
  // series medians: SA <= LLL <= raw
  const auto median_of = [&](ReducerTag tag) {
    std::vector<double> k;
    for (const auto& p : cdf.points)
      if (p.reducer == tag) k.push_back(p.kappa);
    return k[k.size() / 2];
  };
  CHECK(median_of(ReducerTag::kSa) <= median_of(ReducerTag::kLll));
  CHECK(median_of(ReducerTag::kLll) <= median_of(ReducerTag::kNone));

  // SA and LLL counters are populated
  CHECK(cdf.sa.reductions == cfg.n_channels);
  CHECK(cdf.lll.reductions == cfg.n_channels);
  CHECK(cdf.sa.iterations > 0);
  CHECK(cdf.lll.iterations > 0);
}

TEST_CASE("condition cdf identity-channel hook") {
  const ConditionCdf cdf =
      condition_cdf_for_channels({ComplexMatrix::Identity(4, 4)}, small_config());
  REQUIRE(cdf.points.size() == 3);
  for (const auto& p : cdf.points) {
    CHECK(p.kappa == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(p.cdf == 1.0);
  }
}

TEST_CASE("cdf determinism across thread counts") {
  SimConfig cfg = small_config();
  cfg.n_channels = 200;
  cfg.threads = 1;
  const ConditionCdf a = run_condition_cdf(cfg);
  cfg.threads = 4;
  const ConditionCdf b = run_condition_cdf(cfg);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].kappa == b.points[i].kappa);
    CHECK(a.points[i].cdf == b.points[i].cdf);
  }
}
