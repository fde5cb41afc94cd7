#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "coint/rng.hpp"
#include "coint/series.hpp"

using namespace coint;
using Catch::Matchers::WithinAbs;

namespace {

Series make(std::string name, int start, std::vector<double> v) { return Series(std::move(name), start, std::move(v)); }

Series random_positive(Xoshiro256& rng, int start, std::size_t n) {
  std::vector<double> v(n);
  double level = 100.0;
  for (auto& x : v) {
    level *= std::exp(0.05 + 0.1 * rng.gaussian());
    x = level;
  }
  return make("x", start, std::move(v));
}

}  // namespace

TEST_CASE("Series rejects missing values at construction", "[series]") {
  CHECK_THROWS_AS(make("a", 2000, {}), Error);
  try {
    make("a", 2000, {1.0, std::nan(""), 3.0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonNumeric);
    CHECK(e.year == 2001);
  }
}

TEST_CASE("log_transform", "[series]") {
  SECTION("log of unity") {
    const Series out = log_transform(make("one", 2004, {1, 1, 1}));
    CHECK(out.name() == "l_one");
    CHECK(out.start_year() == 2004);
    for (double v : out.values()) CHECK(v == 0.0);
  }
  SECTION("exact exponentials") {
    const double e = std::numbers::e;
    const Series out = log_transform(make("x", 2004, {e, e * e, e * e * e}));
    CHECK_THAT(out[0], WithinAbs(1.0, 1e-15));
    CHECK_THAT(out[1], WithinAbs(2.0, 1e-15));
    CHECK_THAT(out[2], WithinAbs(3.0, 1e-15));
  }
  SECTION("zero entry names its year") {
    try {
      log_transform(make("gdp", 2004, {5.0, 6.0, 0.0, 7.0}));
      FAIL("expected NonPositiveValue");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonPositiveValue);
      CHECK(e.year == 2006);
    }
  }
  SECTION("negative value (net FDI outflow) is rejected") {
    CHECK_THROWS_AS(log_transform(make("fdi", 2004, {1.0, -2.0})), Error);
  }
}

TEST_CASE("difference", "[series]") {
  SECTION("linear trend differences to a constant") {
    const Series d = difference(make("x", 2000, {1, 2, 3, 4}), 1);
    CHECK(d.start_year() == 2001);
    CHECK(std::vector<double>(d.values().begin(), d.values().end()) == std::vector<double>{1, 1, 1});
  }
  SECTION("order 1 twice equals order 2") {
    Xoshiro256 rng(7);
    const Series s = random_positive(rng, 1990, 30);
    const Series twice = difference(difference(s, 1), 1);
    const Series once = difference(s, 2);
    REQUIRE(twice.size() == once.size());
    CHECK(twice.start_year() == once.start_year());
    for (std::size_t i = 0; i < once.size(); ++i) CHECK_THAT(twice[i], WithinAbs(once[i], 1e-9));
  }
  SECTION("random walk differences back to its innovations") {
    const std::uint64_t seed = 424242;
    Xoshiro256 gen(seed);
    std::vector<double> walk(200);
    double level = 0.0;
    for (auto& v : walk) v = (level += gen.gaussian());
    const Series d = difference(make("rw", 1, walk), 1);

    Xoshiro256 replay(seed);
    replay.gaussian();  // first innovation only sets the initial level
    REQUIRE(d.size() == 199);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK_THAT(d[i], WithinAbs(replay.gaussian(), 1e-12));
  }
  SECTION("too short") {
    CHECK_THROWS_MATCHES(difference(make("x", 2000, {1, 2}), 2), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::TooShort; }));
  }
}

TEST_CASE("lag_matrix", "[series]") {
  std::vector<Series> cols;
  for (int j = 0; j < 4; ++j) {
    std::vector<double> v(18);
    for (int i = 0; i < 18; ++i) v[i] = 10.0 * j + i;
    cols.push_back(make("v" + std::to_string(j), 2004, v));
  }
  const Dataset d(cols);

  SECTION("four series of length 18 with max lag 2 leave 16 rows") {
    const LagMatrix m = lag_matrix(d, uniform_lags(d.names(), 1, 2), Deterministics::Constant);
    CHECK(m.rows() == 16);
    CHECK(m.cols() == 9);
    CHECK(m.first_year == 2006);
    CHECK(m.labels.front() == "v0(-1)");
    CHECK(m.labels.back() == "C");
    // Row 0 is 2006: v0(-1) is the 2005 value, v0(-2) the 2004 value.
    CHECK(m.values(0, 0) == 1.0);
    CHECK(m.values(0, 4) == 0.0);
  }
  SECTION("lags 0 without deterministics reproduce the raw data") {
    const LagMatrix m = lag_matrix(d, uniform_lags(d.names(), 0, 0), Deterministics::None);
    CHECK(m.values == d.matrix());
  }
  SECTION("constant+trend on three observations") {
    const Dataset small({make("a", 2000, {5, 6, 7})});
    const LagMatrix m = lag_matrix(small, {{"a", 0}}, Deterministics::ConstantTrend);
    REQUIRE(m.cols() == 3);
    CHECK(m.values(0, 2) == 1.0);
    CHECK(m.values(1, 2) == 2.0);
    CHECK(m.values(2, 2) == 3.0);
    CHECK((m.values.col(1).array() == 1.0).all());
  }
  SECTION("requesting every observation as lag is too short") {
    CHECK_THROWS_AS(lag_matrix(d, {{"v0", 18}}, Deterministics::None), Error);
  }
  SECTION("rows + trim always equal the dataset length") {
    Xoshiro256 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
      LagSpec spec;
      const int terms = 1 + static_cast<int>(rng() % 5);
      int max_lag = 0;
      for (int i = 0; i < terms; ++i) {
        const int lag = static_cast<int>(rng() % 10);
        max_lag = std::max(max_lag, lag);
        spec.push_back({"v" + std::to_string(rng() % 4), lag});
      }
      const LagMatrix m = lag_matrix(d, spec, static_cast<Deterministics>(rng() % 3));
      CHECK(m.rows() + static_cast<std::size_t>(max_lag) == d.length());
      CHECK(m.labels.size() == m.cols());
    }
  }
}

TEST_CASE("align", "[series]") {
  SECTION("identical ranges keep all 18 years") {
    const Dataset d = align({make("a", 2004, std::vector<double>(18, 1.0)), make("b", 2004, std::vector<double>(18, 2.0))});
    CHECK(d.start_year() == 2004);
    CHECK(d.end_year() == 2021);
    CHECK(d.length() == 18);
  }
  SECTION("overlap is the interval intersection") {
    const Dataset d = align({make("a", 2000, std::vector<double>(11, 1.0)), make("b", 2005, std::vector<double>(16, 2.0))});
    CHECK(d.start_year() == 2005);
    CHECK(d.end_year() == 2010);
  }
  SECTION("disjoint ranges") {
    try {
      align({make("a", 2000, std::vector<double>(6, 1.0)), make("b", 2010, std::vector<double>(11, 2.0))});
      FAIL("expected EmptyIntersection");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EmptyIntersection);
    }
  }
  SECTION("idempotent") {
    Xoshiro256 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Series> in;
      for (int j = 0; j < 3; ++j) {
        const int start = 1990 + static_cast<int>(rng() % 10);
        in.push_back(random_positive(rng, start, 15 + rng() % 10).renamed("s" + std::to_string(j)));
      }
      const Dataset once = align(in);
      CHECK(align(once) == once);
    }
  }
  SECTION("duplicate names are rejected") {
    CHECK_THROWS_AS(align({make("a", 2000, {1, 2}), make("a", 2000, {3, 4})}), Error);
  }
}

TEST_CASE("difference of logs equals the log growth ratio", "[series][property]") {
  Xoshiro256 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Series s = random_positive(rng, 2000, 5 + rng() % 40);
    const Series d = difference(log_transform(s), 1);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK_THAT(d[i], WithinAbs(std::log(s[i + 1] / s[i]), 1e-12));
  }
}
