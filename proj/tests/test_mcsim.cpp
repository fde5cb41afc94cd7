#include <catch_amalgamated.hpp>

#include <cmath>

#include "coint/mcsim.hpp"

using namespace coint;
using Catch::Matchers::WithinAbs;

TEST_CASE("generate is deterministic", "[mcsim]") {
  for (const auto& dgp : {mc::Dgp::random_walk(3), mc::Dgp::ar1(0.5, 2), mc::Dgp::i2(), mc::Dgp::cointegrated(4, 2)}) {
    const Dataset a = mc::generate(dgp, 50, 99);
    const Dataset b = mc::generate(dgp, 50, 99);
    CHECK(a == b);
    CHECK_FALSE(a == mc::generate(dgp, 50, 100));
  }
  CHECK_THROWS_AS(mc::generate(mc::Dgp::random_walk(), 19, 1), Error);
  CHECK_THROWS_AS(mc::generate(mc::Dgp::ar1(1.0), 50, 1), Error);
  CHECK_THROWS_AS(mc::generate(mc::Dgp::cointegrated(2, 2), 50, 1), Error);
}

TEST_CASE("ar1(0) is white noise", "[mcsim]") {
  const Dataset d = mc::generate(mc::Dgp::ar1(0.0), 1000, 2024);
  const auto v = d[0].values();
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < v.size(); ++t) {
    den += (v[t] - mean) * (v[t] - mean);
    if (t > 0) num += (v[t] - mean) * (v[t - 1] - mean);
  }
  CHECK(std::abs(num / den) < 0.1);
}

TEST_CASE("cointegrated system has a stationary combination", "[mcsim]") {
  const Dataset d = mc::generate(mc::Dgp::cointegrated(2, 1), 500, 5);
  // beta = (1, -1) for the triangular construction.
  std::vector<double> z(d.length());
  for (std::size_t t = 0; t < z.size(); ++t) z[t] = d[0][t] - d[1][t];
  const AdfSpec spec{Deterministics::Constant, LagSelection::Fixed, 0, std::nullopt, 0.05};
  CHECK(adf_test(Series("z", 1, z), spec).reject_unit_root);
  CHECK_FALSE(adf_test(d[1], spec).reject_unit_root);
}

TEST_CASE("rejection_rate", "[mcsim][montecarlo]") {
  mc::McConfig cfg;
  cfg.seed = 4;
  cfg.replications = 1000;
  cfg.sample_length = 200;
  SECTION("ADF power against ar1(0.5)") {
    const auto rep = mc::rejection_rate(mc::TestKind::Adf, mc::Dgp::ar1(0.5), cfg);
    CHECK(rep.rejection_rate > 0.9);
    CHECK(rep.replications_used == 1000);
  }
  SECTION("Johansen trace selects rank 1 on a rank-1 system") {
    mc::TestOptions opts;
    opts.johansen.det_case = JohansenCase::RestrictedConstant;  // driftless DGP
    const auto rep = mc::rejection_rate(mc::TestKind::JohansenTrace, mc::Dgp::cointegrated(2, 1), cfg, 0.05, opts);
    CHECK(rep.rank_frequency(1) >= 0.90);
    CHECK(rep.rejection_rate >= 0.0);
    CHECK(rep.rejection_rate <= 1.0);
  }
  SECTION("failures are counted, not dropped") {
    mc::McConfig short_cfg = cfg;
    short_cfg.replications = 100;
    short_cfg.sample_length = 20;
    mc::TestOptions opts;
    opts.johansen.var_lags_k = 8;
    const auto rep = mc::rejection_rate(mc::TestKind::JohansenTrace, mc::Dgp::random_walk(6), short_cfg, 0.05, opts);
    CHECK(rep.failures == 100);
    CHECK(rep.replications_used == 0);
    CHECK_FALSE(rep.first_failure.empty());
  }
  SECTION("fewer than 100 replications is rejected") {
    mc::McConfig tiny = cfg;
    tiny.replications = 99;
    CHECK_THROWS_AS(mc::rejection_rate(mc::TestKind::Adf, mc::Dgp::random_walk(), tiny), Error);
  }
}

TEST_CASE("results do not depend on the thread count", "[mcsim]") {
  mc::McConfig cfg;
  cfg.seed = 8;
  cfg.replications = 400;
  cfg.sample_length = 60;
  cfg.threads = 1;
  const auto one = mc::simulate_quantiles(mc::Statistic::Trace, 3, 2, 60, cfg);
  cfg.threads = 4;
  const auto four = mc::simulate_quantiles(mc::Statistic::Trace, 3, 2, 60, cfg);
  CHECK(one.statistics == four.statistics);
  CHECK(one.quantiles == four.quantiles);
  CHECK(one.mean == four.mean);
}

TEST_CASE("simulated quantiles", "[mcsim][montecarlo]") {
  mc::McConfig cfg;
  cfg.seed = 2718;
  cfg.replications = 20000;
  cfg.sample_length = 1000;
  SECTION("trace, case 3, n - r = 1 against the chi-square(1) point") {
    const auto rep = mc::simulate_quantiles(mc::Statistic::Trace, 3, 1, 1000, cfg);
    CHECK_THAT(mc::critical_value(rep, mc::Statistic::Trace, 0.05), WithinAbs(3.841465, 0.15));
    CHECK(rep.quantiles.at(0.99) > rep.quantiles.at(0.95));
  }
  SECTION("ADF constant case") {
    const auto rep = mc::simulate_quantiles(mc::Statistic::AdfT, 2, 1, 1000, cfg);
    CHECK_THAT(mc::critical_value(rep, mc::Statistic::AdfT, 0.05), WithinAbs(-2.86, 0.05));
    CHECK(rep.quantiles.at(0.01) < rep.quantiles.at(0.05));
  }
  SECTION("quantiles are monotone in probability") {
    mc::McConfig small = cfg;
    small.replications = 500;
    const auto rep = mc::simulate_quantiles(mc::Statistic::MaxEigen, 2, 3, 100, small);
    double prev = -INFINITY;
    for (const auto& [p, q] : rep.quantiles) {
      CHECK(q >= prev);
      prev = q;
    }
  }
}

TEST_CASE("quantile standard error shrinks with replications", "[mcsim][montecarlo]") {
  // Spread of the 95% quantile over independent batches, at n and 4n replications.
  auto spread = [](int reps) {
    std::vector<double> q;
    for (std::uint64_t b = 0; b < 30; ++b) {
      mc::McConfig cfg{1000 + b * 7919, reps, 100, 0};
      q.push_back(mc::critical_value(mc::simulate_quantiles(mc::Statistic::AdfT, 2, 1, 100, cfg),
                                     mc::Statistic::AdfT, 0.05));
    }
    double m = 0.0;
    for (double x : q) m += x;
    m /= static_cast<double>(q.size());
    double ss = 0.0;
    for (double x : q) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(q.size() - 1));
  };
  const double small = spread(500);
  const double large = spread(2000);
  // Expected ratio 2; accept anything that clearly halves-ish given 30 batches.
  CHECK(large < 0.75 * small);
  CHECK(large > 0.25 * small);
}
