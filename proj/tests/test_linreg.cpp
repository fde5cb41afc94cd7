#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "coint/linreg.hpp"
#include "coint/rng.hpp"

using namespace coint;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Eigen::MatrixXd random_design(Xoshiro256& rng, int n, int k, bool intercept) {
  Eigen::MatrixXd x(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) x(i, j) = rng.gaussian() * (1.0 + j) + 0.1 * i;
  if (intercept) x.col(k - 1).setOnes();
  return x;
}

Eigen::VectorXd noisy_response(Xoshiro256& rng, const Eigen::MatrixXd& x) {
  Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(x.cols(), 0.5, -0.5);
  Eigen::VectorXd y = x * b;
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) += rng.gaussian();
  return y;
}

}  // namespace

TEST_CASE("exact linear fit", "[linreg]") {
  Eigen::MatrixXd x(5, 2);
  Eigen::VectorXd y(5);
  for (int i = 0; i < 5; ++i) {
    x(i, 0) = 1.0;
    x(i, 1) = i;
    y(i) = 2.0 * i + 1.0;
  }
  const OlsFit fit = ols_fit(x, y, {"C", "x"});
  CHECK_THAT(fit.coefficients(0), WithinAbs(1.0, 1e-12));
  CHECK_THAT(fit.coefficients(1), WithinAbs(2.0, 1e-12));
  CHECK(fit.residuals.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(fit.r2 == 1.0);
  CHECK(fit.degenerate);
  CHECK(std::isinf(fit.f_stat));
}

TEST_CASE("three-point fit matches the hand-solved normal equations", "[linreg]") {
  // Points (0,0), (1,1), (2,0). X'X = [[3,3],[3,5]], X'y = [1,1]:
  // 3a + 3b = 1, 3a + 5b = 1  =>  b = 0, a = 1/3.
  Eigen::MatrixXd x(3, 2);
  x << 1, 0, 1, 1, 1, 2;
  Eigen::VectorXd y(3);
  y << 0, 1, 0;
  const OlsFit fit = ols_fit(x, y);
  CHECK_THAT(fit.coefficients(0), WithinAbs(1.0 / 3.0, 1e-14));
  CHECK_THAT(fit.coefficients(1), WithinAbs(0.0, 1e-14));
  // RSS = (1/3)^2 + (2/3)^2 + (1/3)^2 = 2/3, sigma2 = RSS / 1.
  CHECK_THAT(fit.sigma2, WithinAbs(2.0 / 3.0, 1e-14));
  // (X'X)^-1 = [[5,-3],[-3,3]] / 6  =>  SE(slope) = sqrt(2/3 * 1/2).
  CHECK_THAT(fit.standard_errors(1), WithinAbs(std::sqrt(1.0 / 3.0), 1e-14));
  CHECK_THAT(fit.standard_errors(0), WithinAbs(std::sqrt(2.0 / 3.0 * 5.0 / 6.0), 1e-14));
}

TEST_CASE("collinear or underdetermined designs are rejected", "[linreg]") {
  Xoshiro256 rng(5);
  Eigen::MatrixXd x = random_design(rng, 20, 3, true);
  x.col(1) = x.col(0);
  try {
    ols_fit(x, noisy_response(rng, x), {"a", "b", "C"});
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankDeficient);
    CHECK(e.column == 1);
  }
  const Eigen::MatrixXd wide = random_design(rng, 3, 3, false);
  CHECK_THROWS_MATCHES(ols_fit(wide, Eigen::VectorXd::Ones(3)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::Underdetermined; }));
}

TEST_CASE("summary statistics reproduce reference VECM rows", "[linreg]") {
  // 16 observations, 6 parameters per equation.
  const SummaryStats gdp = summary_stats(0.291200, 16, 6);
  CHECK_THAT(gdp.adj_r2, WithinAbs(-0.063200, 5e-4));
  const SummaryStats hc = summary_stats(0.680465, 16, 6);
  CHECK_THAT(hc.f_stat, WithinAbs(4.259097, 5e-4));
  CHECK_THAT(hc.adj_r2, WithinAbs(0.520698, 5e-4));

  const SummaryStats perfect = summary_stats(1.0, 16, 6);
  CHECK(perfect.adj_r2 == 1.0);
  CHECK(perfect.degenerate);
  CHECK(perfect.f_stat == std::numeric_limits<double>::infinity());
}

TEST_CASE("OLS invariants on random designs", "[linreg][property]") {
  Xoshiro256 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 12 + static_cast<int>(rng() % 60);
    const int k = 2 + static_cast<int>(rng() % 5);
    const Eigen::MatrixXd x = random_design(rng, n, k, true);
    const Eigen::VectorXd y = noisy_response(rng, x);
    const OlsFit fit = ols_fit(x, y);

    const double scale = x.cwiseAbs().maxCoeff() * y.cwiseAbs().maxCoeff() * n;
    CHECK((x.transpose() * fit.residuals).cwiseAbs().maxCoeff() < 1e-8 * scale);
    for (int i = 0; i < k; ++i) {
      CHECK_THAT(fit.t_stats(i) * fit.standard_errors(i), WithinAbs(fit.coefficients(i), 1e-12 * (1 + std::abs(fit.coefficients(i)))));
    }
    CHECK(fit.r2 >= 0.0);
    CHECK(fit.r2 <= 1.0);
    CHECK(fit.adj_r2 <= fit.r2);
    CHECK(fit.residuals.size() == n);

    // Rescaling a regressor rescales its coefficient and nothing else.
    const int j = static_cast<int>(rng() % (k - 1));
    const double c = 0.01 + 100.0 * rng.uniform();
    Eigen::MatrixXd xs = x;
    xs.col(j) *= c;
    const OlsFit scaled = ols_fit(xs, y);
    CHECK_THAT(scaled.coefficients(j), WithinRel(fit.coefficients(j) / c, 1e-9));
    CHECK_THAT(scaled.t_stats(j), WithinAbs(fit.t_stats(j), 1e-10 * (1 + std::abs(fit.t_stats(j)))));
    CHECK_THAT(scaled.r2, WithinAbs(fit.r2, 1e-10));
    CHECK_THAT(scaled.adj_r2, WithinAbs(fit.adj_r2, 1e-10));
    CHECK_THAT(scaled.f_stat, WithinAbs(fit.f_stat, 1e-10 * (1 + fit.f_stat)));
  }
}

TEST_CASE("residualize projects out the regressors", "[linreg]") {
  Xoshiro256 rng(8);
  const Eigen::MatrixXd x = random_design(rng, 40, 3, true);
  Eigen::MatrixXd y(40, 2);
  y.col(0) = noisy_response(rng, x);
  y.col(1) = noisy_response(rng, x);
  const Eigen::MatrixXd r = residualize(x, y);
  CHECK((x.transpose() * r).cwiseAbs().maxCoeff() < 1e-9);
  for (int c = 0; c < 2; ++c) CHECK((r.col(c) - ols_fit(x, y.col(c)).residuals).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(residualize(Eigen::MatrixXd(40, 0), y) == y);
}
