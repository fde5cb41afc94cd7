#include <catch_amalgamated.hpp>

#include <fstream>

#include "coint/report/pipeline.hpp"

// Reference numbers come from tests/oracle/fixture_oracle.py (numpy + statsmodels).

using namespace coint;
using nlohmann::json;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kTol = 1e-6;

json oracle() {
  std::ifstream in(std::string(COINT_TEST_DATA_DIR) + "/fixture_oracle.json");
  return json::parse(in);
}

const report::Report& sample_run() {
  static const report::Report rep = [] {
    auto cfg = pipeline::load_config(std::string(COINT_DATA_DIR) + "/sample_config.json");
    return pipeline::run_pipeline(cfg);
  }();
  return rep;
}

}  // namespace

TEST_CASE("ADF statistics on the fixture match statsmodels", "[oracle]") {
  const auto o = oracle();
  const auto& rep = sample_run();
  REQUIRE(rep.adf.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& ord = rep.adf[i];
    CHECK(ord.variable == o["variables"][i].get<std::string>());
    REQUIRE(ord.level_result.lags_used == 0);
    REQUIRE(ord.diff_result.lags_used == 0);
    CHECK_THAT(ord.level_result.t_stat, WithinAbs(o["adf_level_ct"][i]["t"].get<double>(), kTol));
    CHECK(ord.level_result.n_obs == o["adf_level_ct"][i]["n_obs"].get<int>());
    CHECK_THAT(ord.diff_result.t_stat, WithinAbs(o["adf_diff_c"][i]["t"].get<double>(), kTol));
    CHECK(ord.diff_result.n_obs == o["adf_diff_c"][i]["n_obs"].get<int>());
  }
}

TEST_CASE("Johansen statistics on the fixture match statsmodels", "[oracle]") {
  const auto o = oracle()["johansen"];
  const auto& rep = sample_run();
  REQUIRE(rep.johansen);
  const auto& j = *rep.johansen;
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK_THAT(j.eigenvalues[i], WithinAbs(o["eigenvalues"][i].get<double>(), kTol));
    CHECK_THAT(j.trace_stats[i], WithinAbs(o["trace"][i].get<double>(), kTol));
    CHECK_THAT(j.max_eigen_stats[i], WithinAbs(o["max_eigen"][i].get<double>(), kTol));
  }
}

TEST_CASE("VECM estimates on the fixture match an OLS oracle", "[oracle]") {
  const auto o = oracle();
  const auto& rep = sample_run();
  REQUIRE(rep.vecm);
  const auto& v = *rep.vecm;
  for (int i = 0; i < 4; ++i) {
    CHECK_THAT(v.beta(i, 0), WithinAbs(o["vecm"]["beta"][i].get<double>(), kTol));
    CHECK_THAT(v.beta(i, 0), WithinAbs(o["statsmodels_vecm"]["beta"][i].get<double>(), kTol));
  }
  REQUIRE(v.equations.size() == 4);
  for (std::size_t e = 0; e < 4; ++e) {
    const auto& eq = v.equations[e];
    const auto& ref = o["vecm"]["equations"][e];
    const auto terms = eq.all_terms();
    REQUIRE(terms.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) {
      CHECK(terms[k].label == o["vecm"]["labels"][k].get<std::string>());
      CHECK_THAT(terms[k].coef, WithinAbs(ref["coef"][k].get<double>(), kTol));
      CHECK_THAT(terms[k].se, WithinAbs(ref["se"][k].get<double>(), kTol));
      CHECK_THAT(terms[k].t, WithinRel(terms[k].coef / terms[k].se, 1e-12));
    }
    CHECK_THAT(eq.r2, WithinAbs(ref["r2"].get<double>(), kTol));
    CHECK_THAT(eq.ect[0].coef, WithinAbs(o["statsmodels_vecm"]["alpha"][e].get<double>(), kTol));
  }
}
