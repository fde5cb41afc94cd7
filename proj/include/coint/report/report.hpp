#pragma once

// The pipeline's report: results of every completed stage, the trend
// figure, a generated narrative, and where (and why) the run stopped.

#include <optional>
#include <string>
#include <vector>

#include "coint/ingest/validate.hpp"
#include "coint/report/json.hpp"
#include "coint/report/tables.hpp"

namespace coint::report {

enum class Format { Markdown, Text, Json };

inline Format parse_format(std::string_view s) {
  if (s == "markdown" || s == "md") return Format::Markdown;
  if (s == "text" || s == "txt") return Format::Text;
  if (s == "json") return Format::Json;
  throw coint::detail::make_error(ErrorKind::BadParameter, "unknown format '" + std::string(s) + "'");
}

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitNumerical = 3, kExitGate = 4 };

constexpr int exit_code_for(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Usage: return kExitUsage;
    case ErrorCategory::Data: return kExitData;
    case ErrorCategory::Numerical: return kExitNumerical;
  }
  return kExitData;
}

struct Figure {
  std::string name;  ///< file name, e.g. figure_trends.svg
  std::string title;
  std::string svg;
};

struct Report {
  std::string title = "Cointegration analysis";
  std::string dependent;
  std::vector<std::string> log_variables;
  std::optional<Dataset> data;  ///< after transforms
  std::vector<std::string> completed;
  std::optional<std::string> stopped_at;
  std::string stop_reason;
  int exit_code = kExitOk;
  std::vector<ingest::Issue> issues;
  std::vector<IntegrationOrder> adf;
  std::optional<JohansenResult> johansen;
  std::optional<VecmFit> vecm;
  std::string rank_test = "trace";
  std::optional<LongRunFit> long_run;
  std::vector<Figure> figures;
  std::vector<std::string> narrative;

  bool empty() const { return completed.empty() && !stopped_at; }
};

// ---------------------------------------------------------------------------

inline json to_json(const ingest::Issue& i) {
  return {{"severity", i.severity == ingest::Severity::Error ? "error" : "warning"},
          {"code", i.code},
          {"variable", i.variable},
          {"year", i.year ? json(*i.year) : json(nullptr)},
          {"message", i.message}};
}

inline ingest::Issue issue_from_json(const json& j) {
  ingest::Issue i;
  i.severity = j.at("severity").get<std::string>() == "error" ? ingest::Severity::Error : ingest::Severity::Warning;
  i.code = j.at("code").get<std::string>();
  i.variable = j.at("variable").get<std::string>();
  if (!j.at("year").is_null()) i.year = j.at("year").get<int>();
  i.message = j.at("message").get<std::string>();
  return i;
}

template <class T, class F>
json optional_json(const std::optional<T>& v, F&& f) {
  return v ? f(*v) : json(nullptr);
}

inline json to_json(const Report& r) {
  json j;
  j["title"] = r.title;
  j["dependent"] = r.dependent;
  j["log_variables"] = r.log_variables;
  j["status"] = {{"completed", r.completed},
                 {"stopped_at", r.stopped_at ? json(*r.stopped_at) : json(nullptr)},
                 {"reason", r.stop_reason},
                 {"exit_code", r.exit_code}};
  j["narrative"] = r.narrative;
  j["issues"] = json::array();
  for (const auto& i : r.issues) j["issues"].push_back(to_json(i));
  j["data"] = optional_json(r.data, [](const Dataset& d) { return to_json(d); });
  j["adf"] = json::array();
  for (const auto& o : r.adf) j["adf"].push_back(to_json(o));
  j["johansen"] = optional_json(r.johansen, [](const JohansenResult& x) { return to_json(x); });
  j["rank_test"] = r.rank_test;
  j["vecm"] = optional_json(r.vecm, [](const VecmFit& x) { return to_json(x); });
  j["long_run"] = optional_json(r.long_run, [](const LongRunFit& x) { return to_json(x); });
  j["figures"] = json::array();
  for (const auto& f : r.figures) j["figures"].push_back({{"name", f.name}, {"title", f.title}, {"svg", f.svg}});
  return j;
}

inline Report report_from_json(const json& j) {
  Report r;
  r.title = j.at("title").get<std::string>();
  r.dependent = j.at("dependent").get<std::string>();
  r.log_variables = j.at("log_variables").get<std::vector<std::string>>();
  const auto& st = j.at("status");
  r.completed = st.at("completed").get<std::vector<std::string>>();
  if (!st.at("stopped_at").is_null()) r.stopped_at = st.at("stopped_at").get<std::string>();
  r.stop_reason = st.at("reason").get<std::string>();
  r.exit_code = st.at("exit_code").get<int>();
  r.narrative = j.at("narrative").get<std::vector<std::string>>();
  for (const auto& i : j.at("issues")) r.issues.push_back(issue_from_json(i));
  if (!j.at("data").is_null()) r.data = dataset_from_json(j.at("data"));
  for (const auto& o : j.at("adf")) r.adf.push_back(integration_order_from_json(o));
  if (!j.at("johansen").is_null()) r.johansen = johansen_result_from_json(j.at("johansen"));
  r.rank_test = j.at("rank_test").get<std::string>();
  if (!j.at("vecm").is_null()) r.vecm = vecm_fit_from_json(j.at("vecm"));
  if (!j.at("long_run").is_null()) r.long_run = long_run_fit_from_json(j.at("long_run"));
  for (const auto& f : j.at("figures"))
    r.figures.push_back({f.at("name").get<std::string>(), f.at("title").get<std::string>(), f.at("svg").get<std::string>()});
  return r;
}

inline Report parse_report_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw coint::detail::make_error(ErrorKind::SchemaError, std::string("report is not valid JSON: ") + e.what());
  }
  try {
    return report_from_json(j);
  } catch (const json::exception& e) {
    throw coint::detail::make_error(ErrorKind::SchemaError, std::string("malformed report: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

/// The numbered tables present in the report: ADF, Johansen (trace and
/// max-eigenvalue parts), VECM (estimates and cointegrating equations).
struct ReportTables {
  std::optional<Table> adf;
  std::vector<Table> johansen;
  std::vector<Table> vecm;
  std::optional<Table> long_run;
};

inline ReportTables build_tables(const Report& r) {
  ReportTables t;
  if (!r.adf.empty()) t.adf = adf_table(r.adf);
  if (r.johansen) t.johansen = johansen_rank_tables(*r.johansen);
  if (r.vecm) t.vecm = {vecm_table(*r.vecm), cointegrating_table(*r.vecm)};
  if (r.long_run) t.long_run = long_run_table(*r.long_run);
  return t;
}

namespace detail {

inline std::string render_document(const Report& r, bool markdown) {
  auto heading = [&](int level, const std::string& text) {
    if (markdown) return std::string(static_cast<std::size_t>(level), '#') + " " + text + "\n\n";
    return text + "\n" + std::string(text.size(), level == 1 ? '=' : '-') + "\n\n";
  };
  auto table = [&](const Table& t) { return (markdown ? render_markdown(t) : render_text(t)) + "\n"; };

  std::string out = heading(1, r.title);
  out += heading(2, "Summary");
  for (const auto& line : r.narrative) out += (markdown ? "- " : "* ") + line + "\n";
  out += "\n";
  if (r.stopped_at) {
    out += heading(2, "Pipeline stopped");
    out += "Stage: " + *r.stopped_at + (markdown ? "  \n" : "\n") + "Reason: " + r.stop_reason + "\n\n";
  }
  for (std::size_t i = 0; i < r.figures.size(); ++i) {
    const auto& f = r.figures[i];
    out += heading(2, "Figure " + std::to_string(i + 1) + ": " + f.title);
    out += markdown ? "![" + f.title + "](" + f.name + ")\n\n" : "See " + f.name + ".\n\n";
  }
  const ReportTables t = build_tables(r);
  if (t.adf) {
    out += heading(2, "Table 1: Results of ADF test");
    out += table(*t.adf);
  }
  if (!t.johansen.empty()) {
    out += heading(2, "Table 2: Johansen cointegration test");
    out += "Deterministic case " + std::to_string(static_cast<int>(r.johansen->spec.det_case)) + " (" +
           std::string(describe(r.johansen->spec.det_case)) + "), VAR order k = " + std::to_string(r.johansen->spec.var_lags_k) +
           ", " + std::to_string(r.johansen->t_eff) + " observations after adjustments.\n\n";
    for (const auto& x : t.johansen) out += table(x);
  }
  if (!t.vecm.empty()) {
    out += heading(2, "Table 3: VECM estimates");
    for (const auto& x : t.vecm) out += table(x);
  }
  if (t.long_run) {
    out += heading(2, "Long-run regression");
    out += table(*t.long_run);
  }
  while (out.size() > 1 && out[out.size() - 1] == '\n' && out[out.size() - 2] == '\n') out.pop_back();
  return out;
}

}  // namespace detail

inline std::string render_report(const Report& r, Format format) {
  switch (format) {
    case Format::Markdown: return detail::render_document(r, true);
    case Format::Text: return detail::render_document(r, false);
    case Format::Json: return to_json(r).dump(2) + "\n";
  }
  return {};
}

}  // namespace coint::report
