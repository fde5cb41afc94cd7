// coint: command-line front end.
//
//   coint fetch     download (or read from cache) one WDI indicator as CSV
//   coint adf       ADF level / first-difference table for CSV columns
//   coint johansen  Johansen trace and max-eigenvalue tables
//   coint vecm      VECM estimates at a given or selected rank
//   coint pipeline  the whole chain from a JSON config, writing all outputs
//   coint plot      SVG trend plot of CSV columns
//   coint simulate  Monte Carlo null distributions and rejection rates
//
// Exit codes: 0 ok, 1 usage/config, 2 data/ingest, 3 numerical, 4 gate.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coint/ingest/wdi_http.hpp"
#include "coint/mcsim.hpp"
#include "coint/report/pipeline.hpp"

namespace {

using namespace coint;
namespace fs = std::filesystem;
using report::json;

struct DataOptions {
  std::string csv;
  std::string layout = "wide";
  std::vector<std::string> variables;
  bool log = false;

  void add_to(CLI::App* app) {
    app->add_option("--csv", csv, "Input CSV (year column + one column per series)")->required();
    app->add_option("--layout", layout, "wide or long")->check(CLI::IsMember({"wide", "long"}));
    app->add_option("--variables", variables, "Columns to use, in order (default: all)");
    app->add_flag("--log", log, "Take natural logarithms first");
  }

  Dataset load() const {
    ingest::CsvLayout l;
    l.mode = layout == "wide" ? ingest::CsvMode::Wide : ingest::CsvMode::Long;
    const Dataset all = ingest::read_csv(csv, l);
    std::vector<Series> picked;
    if (variables.empty()) {
      picked = all.series();
    } else {
      for (const auto& v : variables) picked.push_back(all.at(v));
    }
    if (log) {
      for (auto& s : picked) s = log_transform(s).renamed(s.name());
    }
    return Dataset(std::move(picked));
  }
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    ingest::write_file_atomic(out, text);
  }
}

std::string render_tables(const std::vector<report::Table>& tables, const std::string& format) {
  std::string out;
  for (const auto& t : tables) out += (format == "text" ? report::render_text(t) : report::render_markdown(t)) + "\n";
  return out;
}

/// Sets a dotted key ("adf.case") in the config JSON. The value is parsed as
/// JSON when possible, otherwise taken as a string.
void set_key(json& j, const std::string& dotted, const std::string& value) {
  json* node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw detail::make_error(ErrorKind::ConfigError, "bad key '" + dotted + "'");
    if (dot == std::string::npos) {
      json parsed = json::parse(value, nullptr, false);
      (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
      return;
    }
    if (!node->contains(key) || !(*node)[key].is_object()) (*node)[key] = json::object();
    node = &(*node)[key];
    start = dot + 1;
  }
}

int run_fetch(const std::string& country, const std::string& indicator, int start, int end, const std::string& name,
              const std::optional<std::string>& cache_dir, const std::string& base_url, bool offline,
              const std::string& out) {
  const ingest::Cache cache(ingest::resolve_cache_dir(cache_dir));
  ingest::FetchOptions fo;
  fo.transport = ingest::http_transport();
  fo.base_url = base_url;
  fo.cache = &cache;
  fo.series_name = name.empty() ? indicator : name;
  fo.offline = offline;
  const Series s = ingest::fetch_wdi({country, indicator, start, end}, fo);
  emit(ingest::to_csv(Dataset({s})), out);
  return 0;
}

void print_report_json(const json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit-root, cointegration and VECM analysis of annual series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "coint 0.1.0");

  // fetch
  auto* fetch = app.add_subcommand("fetch", "Fetch a World Bank WDI indicator into the cache and print it as CSV");
  std::string f_country, f_indicator, f_name, f_base = ingest::kWdiBaseUrl, f_out;
  int f_start = 0, f_end = 0;
  std::optional<std::string> f_cache;
  bool f_offline = false;
  fetch->add_option("--country", f_country, "ISO3 country code, e.g. BGD")->required();
  fetch->add_option("--indicator", f_indicator, "Indicator code, e.g. NY.GDP.MKTP.CD")->required();
  fetch->add_option("--start", f_start, "First year")->required();
  fetch->add_option("--end", f_end, "Last year")->required();
  fetch->add_option("--name", f_name, "Series name in the output (default: indicator code)");
  fetch->add_option("--cache-dir", f_cache, std::string("Cache directory (default: $") + ingest::kCacheDirEnv + " or .coint-cache)");
  fetch->add_option("--base-url", f_base, "API base URL");
  fetch->add_flag("--offline", f_offline, "Use the cache only");
  fetch->add_option("-o,--out", f_out, "Output CSV (default: stdout)");

  // adf
  auto* adf = app.add_subcommand("adf", "ADF tests on levels and first differences");
  DataOptions a_data;
  a_data.add_to(adf);
  std::string a_case = "ct", a_sel = "bic", a_format = "markdown", a_out;
  std::optional<int> a_max;
  int a_lags = 0;
  double a_sig = 0.05;
  adf->add_option("--case", a_case, "Level deterministics: n, c or ct");
  adf->add_option("--lag-selection", a_sel, "bic, aic or fixed");
  adf->add_option("--max-lags", a_max, "Largest lag considered by bic/aic");
  adf->add_option("--lags", a_lags, "Lag order for --lag-selection fixed");
  adf->add_option("--significance", a_sig);
  adf->add_option("--format", a_format)->check(CLI::IsMember({"markdown", "text", "json", "csv"}));
  adf->add_option("-o,--out", a_out);

  // johansen
  auto* joh = app.add_subcommand("johansen", "Johansen trace and maximum-eigenvalue tests");
  DataOptions j_data;
  j_data.add_to(joh);
  int j_k = 2, j_case = 3;
  double j_sig = 0.05;
  std::string j_format = "markdown", j_out;
  joh->add_option("--k", j_k, "VAR order in levels");
  joh->add_option("--det-case", j_case, "Deterministic case 1..5");
  joh->add_option("--significance", j_sig);
  joh->add_option("--format", j_format)->check(CLI::IsMember({"markdown", "text", "json", "csv"}));
  joh->add_option("-o,--out", j_out);

  // vecm
  auto* vec = app.add_subcommand("vecm", "VECM estimates");
  DataOptions v_data;
  v_data.add_to(vec);
  int v_k = 2, v_case = 3;
  std::optional<int> v_rank, v_diff;
  double v_sig = 0.05;
  std::string v_format = "markdown", v_out, v_test = "trace";
  vec->add_option("--k", v_k, "VAR order in levels (diff lags k - 1)");
  vec->add_option("--det-case", v_case, "Deterministic case 1..5");
  vec->add_option("--rank", v_rank, "Cointegrating rank (default: selected by --rank-test)");
  vec->add_option("--diff-lags", v_diff, "Lagged differences (default: k - 1)");
  vec->add_option("--rank-test", v_test)->check(CLI::IsMember({"trace", "max-eigen"}));
  vec->add_option("--significance", v_sig);
  vec->add_option("--format", v_format)->check(CLI::IsMember({"markdown", "text", "json", "csv"}));
  vec->add_option("-o,--out", v_out);

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "Run plot, ADF, Johansen and VECM from a JSON config");
  std::string p_config, p_format = "markdown";
  std::vector<std::string> p_set;
  std::optional<std::string> p_dependent, p_adf_case, p_adf_sel, p_rank_test, p_output, p_cache, p_base, p_vecm_rank;
  std::optional<int> p_adf_max, p_k, p_det, p_diff, p_start, p_end;
  std::optional<double> p_sig;
  std::vector<std::string> p_plot;
  bool p_offline = false, p_quiet = false;
  pipe->add_option("-c,--config", p_config, "Config file")->required()->check(CLI::ExistingFile);
  pipe->add_option("--dependent", p_dependent);
  pipe->add_option("--adf-case", p_adf_case, "n, c or ct");
  pipe->add_option("--adf-max-lags", p_adf_max);
  pipe->add_option("--adf-lag-selection", p_adf_sel, "bic, aic or fixed");
  pipe->add_option("--johansen-k", p_k);
  pipe->add_option("--det-case", p_det);
  pipe->add_option("--vecm-rank", p_vecm_rank, "integer or auto");
  pipe->add_option("--vecm-diff-lags", p_diff);
  pipe->add_option("--rank-test", p_rank_test, "trace or max-eigen");
  pipe->add_option("--significance", p_sig);
  pipe->add_option("--output-dir", p_output);
  pipe->add_option("--cache-dir", p_cache);
  pipe->add_option("--start-year", p_start, "Default first year for WDI sources");
  pipe->add_option("--end-year", p_end, "Default last year for WDI sources");
  pipe->add_option("--plot", p_plot, "Variables to plot");
  pipe->add_option("--base-url", p_base, "WDI API base URL");
  pipe->add_flag("--offline", p_offline, "Never touch the network; cache only");
  pipe->add_option("--set", p_set, "Override any config key: --set adf.max_lags=1 (value parsed as JSON)");
  pipe->add_option("--format", p_format, "Report printed to stdout")->check(CLI::IsMember({"markdown", "text", "json", "none"}));
  pipe->add_flag("-q,--quiet", p_quiet, "Same as --format none");

  // plot
  auto* plot = app.add_subcommand("plot", "SVG line chart of series against the year");
  DataOptions pl_data;
  pl_data.add_to(plot);
  std::string pl_out, pl_title;
  plot->add_option("-o,--out", pl_out, "Output SVG (default: stdout)");
  plot->add_option("--title", pl_title);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo: null quantiles of a statistic, or a test's rejection rate");
  std::string s_stat = "trace", s_test, s_dgp = "random-walk", s_csv, s_format = "text";
  int s_case = 3, s_nmr = 1, s_length = 1000, s_reps = 10000, s_threads = 0, s_dim = 2, s_rank = 1, s_k = 2;
  double s_rho = 0.5, s_drift = 0.0, s_loading = 1.0, s_nominal = 0.05;
  std::uint64_t s_seed = 20240101;
  sim->add_option("--statistic", s_stat, "adf-t, trace or max-eigen (null quantiles)")
      ->check(CLI::IsMember({"adf-t", "trace", "max-eigen"}));
  sim->add_option("--test", s_test, "adf, johansen-trace or johansen-max: rejection rate on --dgp instead")
      ->check(CLI::IsMember({"adf", "johansen-trace", "johansen-max"}));
  sim->add_option("--case", s_case, "ADF: 1 none, 2 constant, 3 constant+trend; Johansen: 1..5");
  sim->add_option("--n-minus-r", s_nmr, "Johansen dimension n - r");
  sim->add_option("--dgp", s_dgp)->check(CLI::IsMember({"random-walk", "ar1", "i2", "cointegrated"}));
  sim->add_option("--dimension", s_dim, "Series in the DGP");
  sim->add_option("--rank", s_rank, "Cointegrating rank of the cointegrated DGP");
  sim->add_option("--rho", s_rho, "AR(1) coefficient");
  sim->add_option("--drift", s_drift, "Drift of the random walks / common trends");
  sim->add_option("--loading", s_loading, "Adjustment strength of the cointegrated DGP, in (0, 2)");
  sim->add_option("--k", s_k, "Johansen VAR order for --test");
  sim->add_option("--nominal", s_nominal, "Nominal size for --test");
  sim->add_option("--length", s_length, "Sample length T");
  sim->add_option("--reps", s_reps, "Replications");
  sim->add_option("--seed", s_seed, "Base seed");
  sim->add_option("--threads", s_threads, "Worker threads (0: all cores); results do not depend on it");
  sim->add_option("--csv", s_csv, "Write per-replication statistics (replication,statistic)");
  sim->add_option("--format", s_format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : report::kExitUsage;
  }

  try {
    if (*fetch) return run_fetch(f_country, f_indicator, f_start, f_end, f_name, f_cache, f_base, f_offline, f_out);

    if (*adf) {
      AdfSpec spec;
      spec.deterministic = parse_deterministics(a_case);
      spec.selection = parse_lag_selection(a_sel);
      spec.max_lag = a_max;
      spec.lags = a_lags;
      spec.significance = a_sig;
      std::vector<IntegrationOrder> orders;
      const Dataset d = a_data.load();
      for (const auto& s : d.series()) orders.push_back(classify_integration(s, spec));
      if (a_format == "json") {
        json j = json::array();
        for (const auto& o : orders) j.push_back(report::to_json(o));
        print_report_json(j, a_out);
      } else if (a_format == "csv") {
        emit(report::adf_csv(orders), a_out);
      } else {
        emit(render_tables({report::adf_table(orders)}, a_format), a_out);
      }
      return 0;
    }

    if (*joh) {
      const JohansenSpec spec{j_k, johansen_case_from_int(j_case), j_sig};
      const auto r = johansen_test(j_data.load(), spec);
      if (j_format == "json") {
        print_report_json(report::to_json(r), j_out);
      } else if (j_format == "csv") {
        emit(report::johansen_csv(r), j_out);
      } else {
        emit(render_tables(report::johansen_rank_tables(r), j_format), j_out);
      }
      return 0;
    }

    if (*vec) {
      const Dataset d = v_data.load();
      const JohansenSpec js{v_k, johansen_case_from_int(v_case), v_sig};
      const auto jr = johansen_test(d, js);
      VecmSpec vs;
      vs.rank = v_rank.value_or(v_test == "trace" ? jr.rank_trace : jr.rank_max);
      vs.diff_lags = v_diff.value_or(v_k - 1);
      vs.det_case = js.det_case;
      if (vs.rank == 0 && !v_rank) {
        std::fprintf(stderr, "coint: %s test selects rank 0 (no cointegration); VECM not estimated\n", v_test.c_str());
        return report::kExitGate;
      }
      const auto fit = estimate_vecm(d, vs, jr.beta);
      if (v_format == "json") {
        print_report_json(report::to_json(fit), v_out);
      } else if (v_format == "csv") {
        emit(report::vecm_csv(fit), v_out);
      } else {
        emit(render_tables({report::vecm_table(fit), report::cointegrating_table(fit)}, v_format), v_out);
      }
      return 0;
    }

    if (*pipe) {
      json cfg_json;
      try {
        cfg_json = json::parse(ingest::read_text_file(p_config));
      } catch (const json::exception& e) {
        throw detail::make_error(ErrorKind::ConfigError, p_config + " is not valid JSON: " + e.what());
      }
      auto set = [&](const std::string& key, const json& v) { set_key(cfg_json, key, v.dump()); };
      // Paths given on the command line are relative to the working directory.
      auto abs = [](const std::string& p) { return fs::absolute(p).lexically_normal().string(); };
      if (p_dependent) set("dependent", *p_dependent);
      if (p_adf_case) set("adf.case", *p_adf_case);
      if (p_adf_max) set("adf.max_lags", *p_adf_max);
      if (p_adf_sel) set("adf.lag_selection", *p_adf_sel);
      if (p_k) set("johansen.k", *p_k);
      if (p_det) set("johansen.det_case", *p_det);
      if (p_vecm_rank) set("vecm.rank", *p_vecm_rank == "auto" ? json("auto") : json(std::stoi(*p_vecm_rank)));
      if (p_diff) set("vecm.diff_lags", *p_diff);
      if (p_rank_test) set("rank_test", *p_rank_test);
      if (p_sig) set("significance", *p_sig);
      if (p_output) set("output_dir", abs(*p_output));
      if (p_cache) set("cache_dir", abs(*p_cache));
      if (p_start) set("years.start", *p_start);
      if (p_end) set("years.end", *p_end);
      if (!p_plot.empty()) set("plot", p_plot);
      if (p_base) set("wdi_base_url", *p_base);
      if (p_offline) set("offline", true);
      for (const auto& kv : p_set) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw detail::make_error(ErrorKind::ConfigError, "--set expects key=value, got '" + kv + "'");
        set_key(cfg_json, kv.substr(0, eq), kv.substr(eq + 1));
      }
      const auto cfg = pipeline::parse_config(cfg_json, fs::path(p_config).parent_path());
      pipeline::RunOptions opts;
      if (!cfg.offline) opts.transport = ingest::http_transport();
      const auto rep = pipeline::run_pipeline(cfg, opts);
      const auto written = pipeline::write_outputs(rep, cfg.output_dir);
      if (!p_quiet && p_format != "none") std::cout << report::render_report(rep, report::parse_format(p_format));
      for (const auto& p : written) std::fprintf(stderr, "wrote %s\n", p.string().c_str());
      if (rep.stopped_at) std::fprintf(stderr, "coint: stopped at %s: %s\n", rep.stopped_at->c_str(), rep.stop_reason.c_str());
      return rep.exit_code;
    }

    if (*plot) {
      const Dataset d = pl_data.load();
      report::PlotOptions po;
      po.title = pl_title;
      emit(report::plot_trends(d, pl_data.variables.empty() ? d.names() : pl_data.variables, po), pl_out);
      return 0;
    }

    if (*sim) {
      mc::McConfig cfg{s_seed, s_reps, s_length, s_threads};
      mc::McReport rep;
      std::string what;
      if (!s_test.empty()) {
        mc::Dgp dgp;
        if (s_dgp == "random-walk") dgp = mc::Dgp::random_walk(s_dim, s_drift);
        if (s_dgp == "ar1") dgp = mc::Dgp::ar1(s_rho, s_dim);
        if (s_dgp == "i2") dgp = mc::Dgp::i2(s_dim);
        if (s_dgp == "cointegrated") dgp = mc::Dgp::cointegrated(s_dim, s_rank, s_loading, s_drift);
        mc::TestOptions opts;
        const auto kind = mc::parse_test_kind(s_test);
        if (kind == mc::TestKind::Adf) {
          opts.adf.deterministic = s_case == 1 ? Deterministics::None : s_case == 2 ? Deterministics::Constant : Deterministics::ConstantTrend;
        } else {
          opts.johansen = {s_k, johansen_case_from_int(s_case), s_nominal};
        }
        rep = mc::rejection_rate(kind, dgp, cfg, s_nominal, opts);
        what = s_test + " on " + s_dgp;
      } else {
        rep = mc::simulate_quantiles(mc::parse_statistic(s_stat), s_case, s_nmr, s_length, cfg);
        what = s_stat + " null, case " + std::to_string(s_case) + ", n-r " + std::to_string(s_nmr);
      }
      if (!s_csv.empty()) {
        std::string out = "replication,statistic\n";
        for (std::size_t i = 0; i < rep.statistics.size(); ++i) {
          out += std::to_string(i) + "," + ingest::format_double(rep.statistics[i]) + "\n";
        }
        ingest::write_file_atomic(s_csv, out);
      }
      if (s_format == "json") {
        json j = {{"experiment", what},
                  {"seed", s_seed},
                  {"length", s_length},
                  {"replications", s_reps},
                  {"replications_used", rep.replications_used},
                  {"failures", rep.failures},
                  {"mean", report::num(rep.mean)},
                  {"variance", report::num(rep.variance)},
                  {"rejection_rate", report::num(rep.rejection_rate)}};
        for (const auto& [p, q] : rep.quantiles) j["quantiles"][ingest::format_double(p)] = report::num(q);
        for (const auto& [r, c] : rep.rank_counts) j["rank_counts"][std::to_string(r)] = c;
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("%s: T = %d, %d replications (%d failed), seed %llu\n", what.c_str(), s_length, s_reps, rep.failures,
                    static_cast<unsigned long long>(s_seed));
        std::printf("mean %.6f  variance %.6f\n", rep.mean, rep.variance);
        for (const auto& [p, q] : rep.quantiles) std::printf("q%-5g %.6f\n", p, q);
        if (!s_test.empty()) {
          std::printf("rejection rate %.6f\n", rep.rejection_rate);
          for (const auto& [r, c] : rep.rank_counts) std::printf("rank %d selected %d times\n", r, c);
        }
        if (rep.failures > 0) std::printf("first failure: %s\n", rep.first_failure.c_str());
      }
      std::fprintf(stderr, "elapsed %.2fs\n", rep.elapsed_seconds);
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "coint: %s\n", e.what());
    return report::exit_code_for(e.category());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "coint: %s\n", e.what());
    return report::kExitData;
  }
  return report::kExitUsage;
}
