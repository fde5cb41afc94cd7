#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "coint/mcsim.hpp"
#include "coint/rng.hpp"
#include "coint/unitroot.hpp"

using namespace coint;
using Catch::Matchers::WithinAbs;

namespace {

Series walk(std::uint64_t seed, int n) { return mc::generate(mc::Dgp::random_walk(), n, seed)[0]; }
Series noise(std::uint64_t seed, int n) { return mc::generate(mc::Dgp::ar1(0.0), n, seed)[0]; }

AdfSpec fixed(Deterministics det, int lags) { return {det, LagSelection::Fixed, lags, std::nullopt, 0.05}; }

// Dickey-Fuller t-ratio with a constant and no lags, by Frisch-Waugh:
// demean Δy_t and y_{t-1} (first pass), then accumulate cross products (second pass).
double two_pass_df_t(const Series& s) {
  const std::size_t n = s.size() - 1;
  double mx = 0.0, my = 0.0;
  for (std::size_t t = 1; t <= n; ++t) {
    mx += s[t - 1];
    my += s[t] - s[t - 1];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t t = 1; t <= n; ++t) {
    const double x = s[t - 1] - mx;
    const double y = s[t] - s[t - 1] - my;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double gamma = sxy / sxx;
  const double rss = syy - gamma * sxy;
  const double s2 = rss / static_cast<double>(n - 2);
  return gamma / std::sqrt(s2 / sxx);
}

}  // namespace

TEST_CASE("ADF t-statistic matches an independent two-pass regression", "[adf]") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Series s = walk(seed, 500);
    const AdfResult r = adf_test(s, fixed(Deterministics::Constant, 0));
    CHECK_THAT(r.t_stat, WithinAbs(two_pass_df_t(s), 1e-10));
    CHECK(r.n_obs == 499);
    CHECK(r.lags_used == 0);
  }
}

TEST_CASE("ADF null and alternative frequencies", "[adf][montecarlo]") {
  int above_010 = 0, rejected_noise = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    above_010 += adf_test(walk(stream_seed(1, seed), 500), fixed(Deterministics::Constant, 0)).p_value > 0.10;
    rejected_noise += adf_test(noise(stream_seed(2, seed), 500), fixed(Deterministics::Constant, 0)).reject_unit_root;
  }
  // A correctly sized test has P(p > 0.10) = 0.90 under the null; 3-sigma
  // binomial band for 1,000 draws is 0.90 ± 0.029.
  CHECK(above_010 >= 871);
  CHECK(above_010 <= 929);
  CHECK(rejected_noise >= 990);
}

TEST_CASE("ADF empirical size at T = 100", "[adf][montecarlo]") {
  mc::McConfig cfg;
  cfg.seed = 31337;
  cfg.replications = 10000;
  cfg.sample_length = 100;
  const auto rep = mc::rejection_rate(mc::TestKind::Adf, mc::Dgp::random_walk(), cfg);
  CHECK(rep.failures == 0);
  CHECK(rep.rejection_rate >= 0.04);
  CHECK(rep.rejection_rate <= 0.06);
}

TEST_CASE("ADF on degenerate or short input", "[adf]") {
  const Series flat("flat", 2000, std::vector<double>(30, 5.0));
  try {
    adf_test(flat, fixed(Deterministics::Constant, 0));
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankDeficient);
  }
  CHECK_THROWS_AS(adf_test(walk(1, 20).slice(1, 12), fixed(Deterministics::Constant, 5)), Error);
  AdfSpec bad = fixed(Deterministics::Constant, 0);
  bad.selection = LagSelection::Bic;
  bad.max_lag = 10;
  CHECK_THROWS_AS(adf_test(walk(1, 30), bad), Error);
}

TEST_CASE("ADF critical values", "[adf]") {
  CHECK_THAT(adf_critical_values(Deterministics::Constant, 1'000'000'000).five, WithinAbs(-2.86, 0.01));
  CHECK_THAT(adf_critical_values(Deterministics::ConstantTrend, 1'000'000'000).five, WithinAbs(-3.41, 0.01));
  CHECK_THAT(adf_critical_values(Deterministics::None, 1'000'000'000).five, WithinAbs(-1.94, 0.01));
  for (auto det : {Deterministics::None, Deterministics::Constant, Deterministics::ConstantTrend}) {
    for (int t = 10; t <= 2000; t += 7) {
      const auto cv = adf_critical_values(det, t);
      CHECK(cv.one < cv.five);
      CHECK(cv.five < cv.ten);
    }
  }
  CHECK_THROWS_AS(adf_critical_values(Deterministics::Constant, 9), Error);
}

TEST_CASE("ADF p-values", "[adf]") {
  const double level = adf_pvalue(-1.2974, Deterministics::ConstantTrend);
  CHECK(level >= 0.80);
  CHECK(level <= 0.90);
  CHECK(adf_pvalue(-5.5127, Deterministics::Constant) < 0.01);
  for (auto det : {Deterministics::None, Deterministics::Constant, Deterministics::ConstantTrend}) {
    for (int t : {1000, 100000}) {
      CHECK_THAT(adf_pvalue(adf_critical_values(det, t).five, det), WithinAbs(0.05, 0.005));
    }
    double prev = 0.0;
    for (double t = -25.0; t < 5.0; t += 0.01) {
      const double p = adf_pvalue(t, det);
      CHECK(p >= prev);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      prev = p;
    }
  }
}

TEST_CASE("ADF invariance to deterministic shifts", "[adf][property]") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Series s = walk(seed, 80);
    std::vector<double> shifted(s.values().begin(), s.values().end());
    std::vector<double> trended = shifted;
    for (std::size_t i = 0; i < shifted.size(); ++i) {
      shifted[i] += 1000.0;
      trended[i] += 3.0 + 0.75 * static_cast<double>(i);
    }
    for (auto sel : {LagSelection::Fixed, LagSelection::Bic, LagSelection::Aic}) {
      AdfSpec c{Deterministics::Constant, sel, 2, std::nullopt, 0.05};
      AdfSpec ct{Deterministics::ConstantTrend, sel, 2, std::nullopt, 0.05};
      const auto base_c = adf_test(s, c);
      const auto moved_c = adf_test(Series("x", 1, shifted), c);
      CHECK(base_c.lags_used == moved_c.lags_used);
      CHECK_THAT(moved_c.t_stat, WithinAbs(base_c.t_stat, 1e-9));
      const auto base_ct = adf_test(s, ct);
      const auto moved_ct = adf_test(Series("x", 1, trended), ct);
      CHECK(base_ct.lags_used == moved_ct.lags_used);
      CHECK_THAT(moved_ct.t_stat, WithinAbs(base_ct.t_stat, 1e-9));
    }
  }
}

TEST_CASE("automatic lag selection stays within bounds", "[adf]") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Series s = walk(seed, 20 + static_cast<int>(seed * 3));
    const AdfResult r = adf_test(s, AdfSpec{});
    CHECK(r.lags_used >= 0);
    CHECK(r.lags_used <= default_max_lag(s.size()));
    CHECK(3 * default_max_lag(s.size()) < static_cast<int>(s.size()));
    CHECK(r.reject_unit_root == (r.p_value < 0.05));
  }
}

TEST_CASE("integration order classification", "[adf]") {
  // Decision column of the ADF table: level p 0.8359, difference p 0.0050.
  CHECK(decide_order(0.8359 < 0.05, 0.0050 < 0.05) == Order::I1);
  CHECK(decide_order(true, true) == Order::I0);
  CHECK(decide_order(false, false) == Order::I2Plus);
  CHECK(decide_order(true, false) == Order::I2Plus);

  const AdfSpec spec{Deterministics::Constant, LagSelection::Fixed, 0, std::nullopt, 0.05};
  CHECK(classify_integration(noise(5, 200), spec).order == Order::I0);

  int i1 = 0, i2 = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    i1 += classify_integration(walk(seed, 200), AdfSpec{}).order == Order::I1;
    const Series x = mc::generate(mc::Dgp::i2(), 200, seed)[0];
    const auto io = classify_integration(x, AdfSpec{});
    i2 += io.order == Order::I2Plus;
    // Differencing twice does produce a stationary series.
    CHECK(adf_test(difference(x, 2), spec).reject_unit_root);
  }
  CHECK(i1 >= 85);
  CHECK(i2 >= 85);
}
