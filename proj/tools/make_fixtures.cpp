// Builds the bundled synthetic datasets in data/ by searching seeds until
// the pipeline reaches the intended outcome:
//   synthetic_cointegrated.csv  4 series, 2004-2021, all I(1), rank 1 by both
//                               tests with a 10% margin on every decision, an
//                               D(l_gdp) loading near the true -0.8 and a
//                               cointegrating vector near the true one
//   synthetic_stationary.csv    4 series, 2004-2021, all I(0)
// Values are exp(log-level) rounded to 6 significant digits.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coint/ingest/csv.hpp"
#include "coint/report/pipeline.hpp"
#include "coint/rng.hpp"

namespace {

using namespace coint;

double round6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::stod(buf);
}

constexpr int kStart = 2004, kLength = 18;
const std::vector<std::string> kColumns = {"gdp", "lac", "fdi", "hc"};

Dataset make_dataset(const std::vector<std::vector<double>>& logs) {
  std::vector<Series> out;
  for (std::size_t j = 0; j < logs.size(); ++j) {
    std::vector<double> v;
    for (double x : logs[j]) v.push_back(round6(std::exp(x)));
    out.emplace_back(kColumns[j], kStart, std::move(v));
  }
  return Dataset(std::move(out));
}

// l_lac, l_fdi, l_hc are drifting random walks; l_gdp = c + 0.5 l_lac +
// 0.3 l_fdi + 0.8 l_hc + u with u a stationary AR(1).
Dataset cointegrated(std::uint64_t seed) {
  Xoshiro256 rng(seed);
  const double base[] = {std::log(2.0e6), std::log(1.5e9), std::log(45.0)};
  const double drift[] = {0.06, 0.05, 0.02};
  const double sd[] = {0.06, 0.15, 0.03};
  std::vector<std::vector<double>> logs(4, std::vector<double>(kLength));
  double w[3] = {0, 0, 0}, u = 0;
  for (int t = 0; t < kLength; ++t) {
    for (int j = 0; j < 3; ++j) {
      w[j] += drift[j] + sd[j] * rng.gaussian();
      logs[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(t)] = base[j] + w[j];
    }
    u = 0.2 * u + 0.02 * rng.gaussian();
    logs[0][static_cast<std::size_t>(t)] = std::log(7.0e10) + 0.5 * w[0] + 0.3 * w[1] + 0.8 * w[2] + u;
  }
  return make_dataset(logs);
}

Dataset stationary(std::uint64_t seed) {
  Xoshiro256 rng(seed);
  const double base[] = {std::log(7.0e10), std::log(2.0e6), std::log(1.5e9), std::log(45.0)};
  const double sd[] = {0.03, 0.05, 0.2, 0.02};
  std::vector<std::vector<double>> logs(4, std::vector<double>(kLength));
  for (int j = 0; j < 4; ++j) {
    double x = 0;
    for (int t = 0; t < kLength; ++t) {
      x = 0.1 * x + sd[j] * rng.gaussian();
      logs[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] = base[j] + x;
    }
  }
  return make_dataset(logs);
}

pipeline::PipelineConfig config_for(const std::filesystem::path& csv) {
  pipeline::PipelineConfig c;
  for (const auto& col : kColumns) {
    pipeline::VariableConfig v;
    v.name = "l_" + col;
    v.csv = pipeline::CsvSource{csv, col, ingest::CsvMode::Wide};
    c.variables.push_back(v);
  }
  c.dependent = "l_gdp";
  c.adf.deterministic = Deterministics::ConstantTrend;
  c.adf.max_lag = 1;
  c.johansen.var_lags_k = 2;
  c.johansen.det_case = JohansenCase::UnrestrictedConstant;
  return c;
}

bool clear_margin(double stat, double cv, bool reject) { return reject ? stat > 1.1 * cv : stat < 0.9 * cv; }

bool clear_rank_one(const report::Report& rep) {
  if (rep.exit_code != 0 || rep.johansen->rank_trace != 1 || rep.johansen->rank_max != 1) return false;
  const auto& j = *rep.johansen;
  for (std::size_t r = 0; r < j.trace_stats.size(); ++r) {
    if (!clear_margin(j.trace_stats[r], j.critical_values_trace[r].five, r == 0)) return false;
    if (!clear_margin(j.max_eigen_stats[r], j.critical_values_max[r].five, r == 0)) return false;
  }
  for (const auto& o : rep.adf) {
    if (o.level_result.p_value < 0.10 || o.diff_result.p_value > 0.03) return false;
  }
  const double truth[] = {-0.5, -0.3, -0.8};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(rep.vecm->beta(i + 1, 0) - truth[i]) > 0.15) return false;
  }
  const auto& load = rep.vecm->equations.front().ect.front();
  return load.coef < -0.3 && load.coef > -1.5 && load.t < -2.0;  // true loading is -0.8
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the bundled synthetic fixtures"};
  std::string out_dir = "data";
  std::uint64_t first_seed = 1;
  int max_tries = 100000;
  app.add_option("--out-dir", out_dir);
  app.add_option("--first-seed", first_seed);
  app.add_option("--max-tries", max_tries);
  CLI11_PARSE(app, argc, argv);

  const auto tmp = std::filesystem::temp_directory_path() / "coint_make_fixtures.csv";
  struct Target {
    const char* file;
    Dataset (*make)(std::uint64_t);
    bool cointegrated;
  };
  for (const Target& target : {Target{"synthetic_cointegrated.csv", cointegrated, true},
                               Target{"synthetic_stationary.csv", stationary, false}}) {
    bool found = false;
    for (std::uint64_t seed = first_seed; seed < first_seed + static_cast<std::uint64_t>(max_tries); ++seed) {
      const Dataset d = target.make(seed);
      ingest::write_file_atomic(tmp, ingest::to_csv(d));
      const auto rep = pipeline::run_pipeline(config_for(tmp));
      const bool ok = target.cointegrated ? clear_rank_one(rep)
                                          : rep.stopped_at == std::string("adf") && rep.stop_reason.starts_with("all I(0)");
      if (!ok) continue;
      ingest::write_file_atomic(std::filesystem::path(out_dir) / target.file, ingest::to_csv(d));
      std::printf("%s: seed %llu\n", target.file, static_cast<unsigned long long>(seed));
      found = true;
      break;
    }
    if (!found) {
      std::fprintf(stderr, "%s: no seed found\n", target.file);
      return 1;
    }
  }
  std::filesystem::remove(tmp);
  return 0;
}
