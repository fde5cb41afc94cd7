#pragma once

// ingest -> validate -> log-transform -> trend plot -> ADF -> Johansen -> VECM.
// Each gate that fails stops the run; the report keeps every completed
// stage and says where and why it stopped.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coint/cointegration.hpp"
#include "coint/ingest/cache.hpp"
#include "coint/ingest/csv.hpp"
#include "coint/ingest/validate.hpp"
#include "coint/ingest/wdi.hpp"
#include "coint/report/report.hpp"
#include "coint/report/svg.hpp"
#include "coint/unitroot.hpp"
#include "coint/vecm.hpp"

namespace coint::pipeline {

using report::json;

struct CsvSource {
  std::filesystem::path path;
  std::string column;  ///< wide layout: column header; default the variable name
  ingest::CsvMode mode = ingest::CsvMode::Wide;
};

struct WdiSource {
  std::string country;
  std::string indicator;
  std::optional<int> start_year;
  std::optional<int> end_year;
};

struct VariableConfig {
  std::string name;
  std::optional<CsvSource> csv;
  std::optional<WdiSource> wdi;
  bool log = true;
};

struct PipelineConfig {
  std::vector<VariableConfig> variables;
  std::string dependent;
  AdfSpec adf;
  JohansenSpec johansen;
  std::optional<int> vecm_rank;       ///< default: the rank the chosen test selects
  std::optional<int> vecm_diff_lags;  ///< default: k - 1
  std::string rank_test = "trace";
  double significance = 0.05;
  std::filesystem::path output_dir = "output";
  std::optional<std::string> cache_dir;
  std::optional<int> start_year;  ///< default WDI range
  std::optional<int> end_year;
  std::vector<std::string> plot_variables;  ///< default: every variable
  std::string wdi_base_url = ingest::kWdiBaseUrl;
  bool offline = false;
};

namespace detail {

using coint::detail::make_error;

inline const std::set<std::string> kTopLevelKeys = {
    "variables", "dependent", "adf",  "johansen",   "vecm",    "significance", "output_dir",
    "cache_dir", "years",     "plot", "rank_test",  "wdi_base_url", "offline"};

[[noreturn]] inline void config_error(const std::string& msg) { throw make_error(ErrorKind::ConfigError, msg); }

inline void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) config_error(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) config_error("unknown key '" + k + "' in " + where);
  }
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    config_error(where + "." + key + " is missing or has the wrong type");
  }
}

inline std::filesystem::path resolve(const std::filesystem::path& base, const std::filesystem::path& p) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

inline VariableConfig parse_variable(const json& v, std::size_t index, const std::filesystem::path& base) {
  const std::string where = "variables[" + std::to_string(index) + "]";
  check_keys(v, {"name", "source", "log"}, where);
  VariableConfig out;
  out.name = get<std::string>(v, "name", where);
  if (out.name.empty()) config_error(where + ".name is empty");
  if (v.contains("log")) out.log = get<bool>(v, "log", where);
  if (!v.contains("source")) config_error(where + ".source is missing");
  const json& src = v.at("source");
  check_keys(src, {"csv", "wdi"}, where + ".source");
  if (src.contains("csv") == src.contains("wdi")) config_error(where + ".source needs exactly one of csv, wdi");
  if (src.contains("csv")) {
    const json& c = src.at("csv");
    CsvSource cs;
    cs.column = out.name;
    if (c.is_string()) {
      cs.path = resolve(base, c.get<std::string>());
    } else {
      check_keys(c, {"path", "column", "layout"}, where + ".source.csv");
      cs.path = resolve(base, get<std::string>(c, "path", where + ".source.csv"));
      if (c.contains("column")) cs.column = get<std::string>(c, "column", where + ".source.csv");
      if (c.contains("layout")) {
        const auto layout = get<std::string>(c, "layout", where + ".source.csv");
        if (layout != "wide" && layout != "long") config_error(where + ".source.csv.layout must be wide or long");
        cs.mode = layout == "wide" ? ingest::CsvMode::Wide : ingest::CsvMode::Long;
      }
    }
    out.csv = std::move(cs);
  } else {
    const json& w = src.at("wdi");
    check_keys(w, {"country", "indicator", "start", "end"}, where + ".source.wdi");
    WdiSource ws;
    ws.country = get<std::string>(w, "country", where + ".source.wdi");
    ws.indicator = get<std::string>(w, "indicator", where + ".source.wdi");
    if (w.contains("start")) ws.start_year = get<int>(w, "start", where + ".source.wdi");
    if (w.contains("end")) ws.end_year = get<int>(w, "end", where + ".source.wdi");
    out.wdi = std::move(ws);
  }
  return out;
}

}  // namespace detail

/// Checks the invariants that do not need data: at least two variables,
/// unique names, exactly one dependent among them, sane test settings.
inline void validate_config(const PipelineConfig& c) {
  using detail::config_error;
  if (c.variables.size() < 2) config_error("at least two variables are required");
  std::set<std::string> names;
  for (const auto& v : c.variables) {
    if (!names.insert(v.name).second) config_error("variable '" + v.name + "' is listed twice");
    if (v.wdi && !(v.wdi->start_year || c.start_year)) config_error("variable '" + v.name + "' needs a WDI start year");
    if (v.wdi && !(v.wdi->end_year || c.end_year)) config_error("variable '" + v.name + "' needs a WDI end year");
  }
  if (c.dependent.empty()) config_error("no dependent variable");
  if (!names.count(c.dependent)) config_error("dependent variable '" + c.dependent + "' is not among the variables");
  for (const auto& p : c.plot_variables) {
    if (!names.count(p)) config_error("plot variable '" + p + "' is not among the variables");
  }
  if (!(c.significance > 0.0 && c.significance < 1.0)) config_error("significance must lie in (0, 1)");
  if (c.johansen.var_lags_k < 1) config_error("johansen.k must be at least 1");
  if (c.rank_test != "trace" && c.rank_test != "max-eigen") config_error("rank_test must be trace or max-eigen");
  if (c.vecm_rank && *c.vecm_rank < 1) config_error("vecm.rank must be at least 1");
  if (c.vecm_diff_lags && *c.vecm_diff_lags < 0) config_error("vecm.diff_lags must be non-negative");
  if (c.adf.max_lag && *c.adf.max_lag < 0) config_error("adf.max_lags must be non-negative");
}

/// Relative paths in the file (CSV sources, output_dir, cache_dir) are taken
/// relative to `base_dir`, normally the config file's directory.
inline PipelineConfig parse_config(const json& j, const std::filesystem::path& base_dir = {}) {
  using detail::config_error;
  using detail::get;
  detail::check_keys(j, detail::kTopLevelKeys, "config");
  PipelineConfig c;
  if (!j.contains("variables") || !j.at("variables").is_array()) config_error("config.variables must be an array");
  for (std::size_t i = 0; i < j.at("variables").size(); ++i) {
    c.variables.push_back(detail::parse_variable(j.at("variables")[i], i, base_dir));
  }
  c.dependent = get<std::string>(j, "dependent", "config");
  try {
    if (j.contains("significance")) c.significance = get<double>(j, "significance", "config");
    if (j.contains("adf")) {
      const json& a = j.at("adf");
      detail::check_keys(a, {"case", "max_lags", "lag_selection", "lags"}, "config.adf");
      if (a.contains("case")) c.adf.deterministic = parse_deterministics(get<std::string>(a, "case", "config.adf"));
      if (a.contains("max_lags")) c.adf.max_lag = get<int>(a, "max_lags", "config.adf");
      if (a.contains("lag_selection")) c.adf.selection = parse_lag_selection(get<std::string>(a, "lag_selection", "config.adf"));
      if (a.contains("lags")) c.adf.lags = get<int>(a, "lags", "config.adf");
    }
    if (j.contains("johansen")) {
      const json& a = j.at("johansen");
      detail::check_keys(a, {"k", "det_case"}, "config.johansen");
      if (a.contains("k")) c.johansen.var_lags_k = get<int>(a, "k", "config.johansen");
      if (a.contains("det_case")) c.johansen.det_case = johansen_case_from_int(get<int>(a, "det_case", "config.johansen"));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError) throw;
    config_error(e.what());
  }
  if (j.contains("vecm")) {
    const json& a = j.at("vecm");
    detail::check_keys(a, {"rank", "diff_lags"}, "config.vecm");
    if (a.contains("rank") && !(a.at("rank").is_string() && a.at("rank").get<std::string>() == "auto")) {
      c.vecm_rank = get<int>(a, "rank", "config.vecm");
    }
    if (a.contains("diff_lags")) c.vecm_diff_lags = get<int>(a, "diff_lags", "config.vecm");
  }
  if (j.contains("rank_test")) c.rank_test = get<std::string>(j, "rank_test", "config");
  if (j.contains("output_dir")) c.output_dir = detail::resolve(base_dir, get<std::string>(j, "output_dir", "config"));
  if (j.contains("cache_dir")) c.cache_dir = detail::resolve(base_dir, get<std::string>(j, "cache_dir", "config")).string();
  if (j.contains("years")) {
    const json& y = j.at("years");
    detail::check_keys(y, {"start", "end"}, "config.years");
    if (y.contains("start")) c.start_year = get<int>(y, "start", "config.years");
    if (y.contains("end")) c.end_year = get<int>(y, "end", "config.years");
  }
  if (j.contains("plot")) c.plot_variables = get<std::vector<std::string>>(j, "plot", "config");
  if (j.contains("wdi_base_url")) c.wdi_base_url = get<std::string>(j, "wdi_base_url", "config");
  if (j.contains("offline")) c.offline = get<bool>(j, "offline", "config");
  validate_config(c);
  return c;
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
  const std::string text = ingest::read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    detail::config_error(path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j, path.parent_path());
}

struct RunOptions {
  ingest::Transport transport;  ///< needed only for WDI sources missing from the cache
};

// ---------------------------------------------------------------------------

namespace detail {

inline Series load_variable(const VariableConfig& v, const PipelineConfig& c, const RunOptions& opts,
                            std::map<std::filesystem::path, Dataset>& csv_cache) {
  if (v.csv) {
    const auto key = v.csv->path;
    auto it = csv_cache.find(key);
    if (it == csv_cache.end()) {
      ingest::CsvLayout layout;
      layout.mode = v.csv->mode;
      it = csv_cache.emplace(key, ingest::read_csv(v.csv->path, layout)).first;
    }
    const Dataset& d = it->second;
    const Series& s = v.csv->mode == ingest::CsvMode::Long ? d[0] : d.at(v.csv->column);
    return s.renamed(v.name);
  }
  ingest::WdiQuery q{v.wdi->country, v.wdi->indicator, v.wdi->start_year.value_or(c.start_year.value_or(0)),
                     v.wdi->end_year.value_or(c.end_year.value_or(0))};
  const ingest::Cache cache(ingest::resolve_cache_dir(c.cache_dir));
  ingest::FetchOptions fo;
  fo.transport = opts.transport;
  fo.base_url = c.wdi_base_url;
  fo.cache = &cache;
  fo.series_name = v.name;
  fo.offline = c.offline || !opts.transport;
  return ingest::fetch_wdi(q, fo).renamed(v.name);
}

inline std::string join(const std::vector<std::string>& items, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

inline std::string signed_term(double coef, const std::string& name, bool first) {
  const std::string mag = report::fixed(std::abs(coef));
  const std::string sign = coef < 0 ? "-" : "+";
  if (first) return (coef < 0 ? "-" : "") + mag + (name.empty() ? "" : " " + name);
  return " " + sign + " " + mag + (name.empty() ? "" : " " + name);
}

/// "l_gdp = 0.5 l_lac - 0.2 l_fdi + 1.1" from the first normalized vector.
inline std::string long_run_relation(const VecmFit& f) {
  std::string out = f.variables.front() + " = ";
  bool first = true;
  for (Eigen::Index i = 1; i < f.beta.rows(); ++i) {
    const auto& label = f.beta_row_labels[static_cast<std::size_t>(i)];
    out += signed_term(-f.beta(i, 0), label == "C" ? "" : label, first);
    first = false;
  }
  return out;
}

}  // namespace detail

inline std::vector<std::string> ordered_names(const PipelineConfig& c) {
  std::vector<std::string> names{c.dependent};
  for (const auto& v : c.variables) {
    if (v.name != c.dependent) names.push_back(v.name);
  }
  return names;
}

/// Runs every stage it can. Never throws for data, numerical or gate
/// failures; those end up in Report::stopped_at / stop_reason / exit_code.
/// Config problems throw Error(ConfigError) before anything runs.
inline report::Report run_pipeline(const PipelineConfig& cfg, const RunOptions& opts = {}) {
  validate_config(cfg);
  report::Report rep;
  rep.dependent = cfg.dependent;
  rep.rank_test = cfg.rank_test;
  const std::string level = report::level_label(cfg.significance);

  std::string stage;
  auto stop = [&](const std::string& reason, int code) {
    rep.stopped_at = stage;
    rep.stop_reason = reason;
    rep.exit_code = code;
    rep.narrative.push_back("Stopped at stage '" + stage + "': " + reason + ".");
    return rep;
  };
  auto done = [&] { rep.completed.push_back(stage); };

  try {
    stage = "ingest";
    const std::vector<std::string> names = ordered_names(cfg);
    std::map<std::filesystem::path, Dataset> csv_cache;
    std::vector<Series> raw;
    for (const auto& name : names) {
      const auto& v = *std::find_if(cfg.variables.begin(), cfg.variables.end(), [&](const auto& x) { return x.name == name; });
      raw.push_back(detail::load_variable(v, cfg, opts, csv_cache));
      if (v.log) rep.log_variables.push_back(v.name);
    }
    const Dataset aligned = align(raw);
    done();

    stage = "validate";
    const auto validation = ingest::validate_dataset(aligned, rep.log_variables);
    rep.issues = validation.issues;
    rep.narrative.push_back("Sample " + std::to_string(aligned.start_year()) + "-" + std::to_string(aligned.end_year()) +
                            " (" + std::to_string(aligned.length()) + " observations); variables " + detail::join(names) +
                            "; dependent " + cfg.dependent + ".");
    for (const auto& i : validation.issues) {
      rep.narrative.push_back(std::string(i.severity == ingest::Severity::Error ? "Error" : "Warning") + " (" + i.code +
                              "): " + i.message + ".");
    }
    if (!validation.ok()) return stop("the data failed validation", report::kExitData);
    done();

    stage = "transform";
    std::vector<Series> transformed;
    for (const auto& s : aligned.series()) {
      const bool logged = std::find(rep.log_variables.begin(), rep.log_variables.end(), s.name()) != rep.log_variables.end();
      transformed.push_back(logged ? log_transform(s).renamed(s.name()) : s);
    }
    const Dataset data(std::move(transformed));
    rep.data = data;
    if (!rep.log_variables.empty()) rep.narrative.push_back("Natural logarithms taken of " + detail::join(rep.log_variables) + ".");
    done();

    stage = "plot";
    const std::vector<std::string> plotted = cfg.plot_variables.empty() ? names : cfg.plot_variables;
    report::Figure fig;
    fig.name = "figure_trends.svg";
    fig.title = "Graph of " + report::detail::join_names(plotted);
    fig.svg = report::plot_trends(data, plotted);
    rep.figures.push_back(std::move(fig));
    done();

    stage = "adf";
    AdfSpec adf = cfg.adf;
    adf.significance = cfg.significance;
    std::vector<std::string> decisions;
    int n_i0 = 0, n_i1 = 0;
    for (const auto& s : data.series()) {
      rep.adf.push_back(classify_integration(s, adf));
      const Order o = rep.adf.back().order;
      n_i0 += o == Order::I0;
      n_i1 += o == Order::I1;
      decisions.push_back(s.name() + " " + std::string(to_string(o)));
    }
    const int n = static_cast<int>(data.dimension());
    rep.narrative.push_back("ADF at the " + level + " level: " + detail::join(decisions) + ".");
    done();
    if (n_i0 == n) return stop("all I(0): cointegration test not applicable", report::kExitGate);
    if (n_i1 != n) {
      return stop("mixed integration orders (" + detail::join(decisions) +
                      "): the Johansen test needs every variable to be I(1)",
                  report::kExitGate);
    }
    rep.narrative.push_back("All variables are I(1), so the Johansen test is applied.");

    stage = "johansen";
    JohansenSpec js = cfg.johansen;
    js.significance = cfg.significance;
    rep.johansen = johansen_test(data, js);
    const auto& jr = *rep.johansen;
    rep.narrative.push_back("Johansen, case " + std::to_string(static_cast<int>(js.det_case)) + " (" +
                            std::string(describe(js.det_case)) + "), k = " + std::to_string(js.var_lags_k) + ": " +
                            report::indicates("Trace", jr.rank_trace, n, cfg.significance) + "; " +
                            report::indicates("Max-eigenvalue", jr.rank_max, n, cfg.significance) + ".");
    done();
    const int selected = cfg.rank_test == "trace" ? jr.rank_trace : jr.rank_max;
    const int rank = cfg.vecm_rank.value_or(selected);
    if (rank == 0) return stop("no cointegration at the " + level + " level (" + cfg.rank_test + " test): VECM not estimated", report::kExitGate);
    if (rank >= n) return stop("full rank " + std::to_string(rank) + ": the system is stationary and a VECM does not apply", report::kExitGate);

    stage = "vecm";
    VecmSpec vs;
    vs.rank = rank;
    vs.diff_lags = cfg.vecm_diff_lags.value_or(js.var_lags_k - 1);
    vs.det_case = js.det_case;
    rep.vecm = estimate_vecm(data, vs, jr.beta);
    rep.long_run = long_run_ols(data, true);
    const auto& vf = *rep.vecm;
    rep.narrative.push_back("VECM estimated at rank " + std::to_string(rank) +
                            (cfg.vecm_rank ? " (fixed in the configuration)" : " (" + cfg.rank_test + " test)") + " with " +
                            std::to_string(vs.diff_lags) + " lagged difference(s); " + std::to_string(vf.t_eff) +
                            " observations per equation.");
    rep.narrative.push_back("Long-run relation (CointEq1, normalized on " + vf.variables.front() +
                            "): " + detail::long_run_relation(vf) + ".");
    const Estimate& load = vf.equations.front().ect.front();
    rep.narrative.push_back("Loading of " + vf.equations.front().dependent + " on CointEq1: " + report::fixed(load.coef) +
                            " [t = " + report::fixed(load.t, 5) + "].");
    rep.narrative.push_back("Conclusion: the variables share " + std::to_string(rank) + " long-run (cointegrating) relationship" +
                            (rank > 1 ? "s." : "."));
    done();
  } catch (const Error& e) {
    return stop(e.what(), report::exit_code_for(e.category()));
  }
  return rep;
}

/// Declared output files, in the order they are written.
inline const std::vector<std::string> kOutputFiles = {"report.md",      "report.json",       "figure_trends.svg",
                                                      "table_adf.csv", "table_johansen.csv", "table_vecm.csv"};

/// Writes whichever outputs the report supports and removes stale ones
/// from an earlier run, so the directory always matches the report.
inline std::vector<std::filesystem::path> write_outputs(const report::Report& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw coint::detail::make_error(ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());
  std::map<std::string, std::string> files;
  files["report.md"] = report::render_report(r, report::Format::Markdown);
  files["report.json"] = report::render_report(r, report::Format::Json);
  for (const auto& f : r.figures) files[f.name] = f.svg;
  if (!r.adf.empty()) files["table_adf.csv"] = report::adf_csv(r.adf);
  if (r.johansen) files["table_johansen.csv"] = report::johansen_csv(*r.johansen);
  if (r.vecm) files["table_vecm.csv"] = report::vecm_csv(*r.vecm);
  std::vector<std::filesystem::path> written;
  for (const auto& name : kOutputFiles) {
    const auto path = dir / name;
    auto it = files.find(name);
    if (it == files.end()) {
      std::filesystem::remove(path, ec);
      continue;
    }
    ingest::write_file_atomic(path, it->second);
    written.push_back(path);
  }
  return written;
}

}  // namespace coint::pipeline
