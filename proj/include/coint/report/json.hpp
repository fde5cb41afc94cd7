#pragma once

// JSON (de)serialization of the result types. Doubles are written in
// shortest round-trip form, so parse(dump(x)) == x exactly; infinities and
// NaN, which JSON cannot express, are written as the strings "Infinity",
// "-Infinity" and "NaN".

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "coint/cointegration.hpp"
#include "coint/error.hpp"
#include "coint/linreg.hpp"
#include "coint/series.hpp"
#include "coint/unitroot.hpp"
#include "coint/vecm.hpp"

namespace coint::report {

using nlohmann::json;

inline json num(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  return v;
}

inline double to_num(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
    if (s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
  }
  throw coint::detail::make_error(ErrorKind::SchemaError, "expected a number, got " + j.dump());
}

inline json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

inline std::vector<double> to_nums(const json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(to_num(x));
  return v;
}

inline json nums(const Eigen::VectorXd& v) { return nums(std::vector<double>(v.data(), v.data() + v.size())); }

inline Eigen::VectorXd to_vector(const json& j) {
  const auto v = to_nums(j);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// Row-major array of arrays.
inline json matrix(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(num(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Eigen::MatrixXd to_matrix(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = to_num(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  return m;
}

// ---------------------------------------------------------------------------

inline json to_json(const Series& s) {
  return {{"name", s.name()}, {"start_year", s.start_year()},
          {"values", nums(std::vector<double>(s.values().begin(), s.values().end()))}};
}

inline Series series_from_json(const json& j) {
  return Series(j.at("name").get<std::string>(), j.at("start_year").get<int>(), to_nums(j.at("values")));
}

inline json to_json(const Dataset& d) {
  json a = json::array();
  for (const auto& s : d.series()) a.push_back(to_json(s));
  return a;
}

inline Dataset dataset_from_json(const json& j) {
  std::vector<Series> s;
  for (const auto& x : j) s.push_back(series_from_json(x));
  return Dataset(std::move(s));
}

inline std::string deterministics_code(Deterministics d) {
  return d == Deterministics::None ? "n" : d == Deterministics::Constant ? "c" : "ct";
}

inline json to_json(const CriticalValues& cv) { return {{"1%", num(cv.one)}, {"5%", num(cv.five)}, {"10%", num(cv.ten)}}; }

inline CriticalValues critical_values_from_json(const json& j) {
  return {to_num(j.at("1%")), to_num(j.at("5%")), to_num(j.at("10%"))};
}

inline json to_json(const AdfSpec& s) {
  json j = {{"deterministic", deterministics_code(s.deterministic)},
            {"selection", std::string(to_string(s.selection))},
            {"lags", s.lags},
            {"significance", num(s.significance)}};
  j["max_lag"] = s.max_lag ? json(*s.max_lag) : json(nullptr);
  return j;
}

inline AdfSpec adf_spec_from_json(const json& j) {
  AdfSpec s;
  s.deterministic = parse_deterministics(j.at("deterministic").get<std::string>());
  s.selection = parse_lag_selection(j.at("selection").get<std::string>());
  s.lags = j.at("lags").get<int>();
  s.significance = to_num(j.at("significance"));
  if (!j.at("max_lag").is_null()) s.max_lag = j.at("max_lag").get<int>();
  return s;
}

inline json to_json(const AdfResult& r) {
  return {{"variable", r.variable},
          {"stage", r.stage == Stage::Level ? "level" : "first-difference"},
          {"t_stat", num(r.t_stat)},
          {"gamma", num(r.gamma)},
          {"p_value", num(r.p_value)},
          {"critical_values", to_json(r.critical_values)},
          {"lags_used", r.lags_used},
          {"n_obs", r.n_obs},
          {"spec", to_json(r.spec)},
          {"reject_unit_root", r.reject_unit_root},
          {"pvalue_method", r.pvalue_method}};
}

inline AdfResult adf_result_from_json(const json& j) {
  AdfResult r;
  r.variable = j.at("variable").get<std::string>();
  r.stage = j.at("stage").get<std::string>() == "level" ? Stage::Level : Stage::FirstDifference;
  r.t_stat = to_num(j.at("t_stat"));
  r.gamma = to_num(j.at("gamma"));
  r.p_value = to_num(j.at("p_value"));
  r.critical_values = critical_values_from_json(j.at("critical_values"));
  r.lags_used = j.at("lags_used").get<int>();
  r.n_obs = j.at("n_obs").get<int>();
  r.spec = adf_spec_from_json(j.at("spec"));
  r.reject_unit_root = j.at("reject_unit_root").get<bool>();
  r.pvalue_method = j.at("pvalue_method").get<std::string>();
  return r;
}

inline json to_json(const IntegrationOrder& o) {
  return {{"variable", o.variable},
          {"order", std::string(to_string(o.order))},
          {"level", to_json(o.level_result)},
          {"first_difference", to_json(o.diff_result)}};
}

inline Order order_from_string(const std::string& s) {
  if (s == "I(0)") return Order::I0;
  if (s == "I(1)") return Order::I1;
  return Order::I2Plus;
}

inline IntegrationOrder integration_order_from_json(const json& j) {
  return {j.at("variable").get<std::string>(), order_from_string(j.at("order").get<std::string>()),
          adf_result_from_json(j.at("level")), adf_result_from_json(j.at("first_difference"))};
}

inline json to_json(const JohansenResult& r) {
  json cvt = json::array(), cvm = json::array();
  for (const auto& c : r.critical_values_trace) cvt.push_back(to_json(c));
  for (const auto& c : r.critical_values_max) cvm.push_back(to_json(c));
  return {{"variables", r.variables},
          {"spec", {{"k", r.spec.var_lags_k}, {"det_case", static_cast<int>(r.spec.det_case)}, {"significance", num(r.spec.significance)}}},
          {"t_eff", r.t_eff},
          {"eigenvalues", nums(r.eigenvalues)},
          {"beta", matrix(r.beta)},
          {"alpha", matrix(r.alpha)},
          {"beta_row_labels", r.beta_row_labels},
          {"trace_stats", nums(r.trace_stats)},
          {"max_eigen_stats", nums(r.max_eigen_stats)},
          {"critical_values_trace", cvt},
          {"critical_values_max", cvm},
          {"p_values_trace", nums(r.p_values_trace)},
          {"p_values_max", nums(r.p_values_max)},
          {"rank_trace", r.rank_trace},
          {"rank_max", r.rank_max}};
}

inline JohansenResult johansen_result_from_json(const json& j) {
  JohansenResult r;
  r.variables = j.at("variables").get<std::vector<std::string>>();
  r.spec.var_lags_k = j.at("spec").at("k").get<int>();
  r.spec.det_case = johansen_case_from_int(j.at("spec").at("det_case").get<int>());
  r.spec.significance = to_num(j.at("spec").at("significance"));
  r.t_eff = j.at("t_eff").get<int>();
  r.eigenvalues = to_nums(j.at("eigenvalues"));
  r.beta = to_matrix(j.at("beta"));
  r.alpha = to_matrix(j.at("alpha"));
  r.beta_row_labels = j.at("beta_row_labels").get<std::vector<std::string>>();
  r.trace_stats = to_nums(j.at("trace_stats"));
  r.max_eigen_stats = to_nums(j.at("max_eigen_stats"));
  for (const auto& c : j.at("critical_values_trace")) r.critical_values_trace.push_back(critical_values_from_json(c));
  for (const auto& c : j.at("critical_values_max")) r.critical_values_max.push_back(critical_values_from_json(c));
  r.p_values_trace = to_nums(j.at("p_values_trace"));
  r.p_values_max = to_nums(j.at("p_values_max"));
  r.rank_trace = j.at("rank_trace").get<int>();
  r.rank_max = j.at("rank_max").get<int>();
  return r;
}

inline json to_json(const OlsFit& f) {
  return {{"labels", f.labels},
          {"coefficients", nums(f.coefficients)},
          {"standard_errors", nums(f.standard_errors)},
          {"t_stats", nums(f.t_stats)},
          {"residuals", nums(f.residuals)},
          {"sigma2", num(f.sigma2)},
          {"rss", num(f.rss)},
          {"tss", num(f.tss)},
          {"r2", num(f.r2)},
          {"adj_r2", num(f.adj_r2)},
          {"f_stat", num(f.f_stat)},
          {"degenerate", f.degenerate},
          {"has_intercept", f.has_intercept},
          {"n_obs", f.n_obs},
          {"n_params", f.n_params}};
}

inline OlsFit ols_fit_from_json(const json& j) {
  OlsFit f;
  f.labels = j.at("labels").get<std::vector<std::string>>();
  f.coefficients = to_vector(j.at("coefficients"));
  f.standard_errors = to_vector(j.at("standard_errors"));
  f.t_stats = to_vector(j.at("t_stats"));
  f.residuals = to_vector(j.at("residuals"));
  f.sigma2 = to_num(j.at("sigma2"));
  f.rss = to_num(j.at("rss"));
  f.tss = to_num(j.at("tss"));
  f.r2 = to_num(j.at("r2"));
  f.adj_r2 = to_num(j.at("adj_r2"));
  f.f_stat = to_num(j.at("f_stat"));
  f.degenerate = j.at("degenerate").get<bool>();
  f.has_intercept = j.at("has_intercept").get<bool>();
  f.n_obs = j.at("n_obs").get<int>();
  f.n_params = j.at("n_params").get<int>();
  return f;
}

inline json to_json(const Estimate& e) { return {{"label", e.label}, {"coef", num(e.coef)}, {"se", num(e.se)}, {"t", num(e.t)}}; }

inline Estimate estimate_from_json(const json& j) {
  return {j.at("label").get<std::string>(), to_num(j.at("coef")), to_num(j.at("se")), to_num(j.at("t"))};
}

inline json estimates(const std::vector<Estimate>& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(to_json(e));
  return a;
}

inline std::vector<Estimate> estimates_from_json(const json& j) {
  std::vector<Estimate> v;
  for (const auto& e : j) v.push_back(estimate_from_json(e));
  return v;
}

inline json to_json(const VecmFit& f) {
  json eqs = json::array();
  for (const auto& e : f.equations) {
    eqs.push_back({{"dependent", e.dependent},
                   {"ect", estimates(e.ect)},
                   {"short_run", estimates(e.short_run)},
                   {"deterministic", estimates(e.deterministic)},
                   {"r2", num(e.r2)},
                   {"adj_r2", num(e.adj_r2)},
                   {"f_stat", num(e.f_stat)},
                   {"n_obs", e.n_obs},
                   {"n_params", e.n_params},
                   {"ols", to_json(e.ols)}});
  }
  return {{"variables", f.variables},
          {"spec", {{"rank", f.spec.rank}, {"diff_lags", f.spec.diff_lags}, {"det_case", static_cast<int>(f.spec.det_case)}}},
          {"beta", matrix(f.beta)},
          {"beta_row_labels", f.beta_row_labels},
          {"equations", eqs},
          {"residual_covariance", matrix(f.residual_covariance)},
          {"t_eff", f.t_eff}};
}

inline VecmFit vecm_fit_from_json(const json& j) {
  VecmFit f;
  f.variables = j.at("variables").get<std::vector<std::string>>();
  f.spec.rank = j.at("spec").at("rank").get<int>();
  f.spec.diff_lags = j.at("spec").at("diff_lags").get<int>();
  f.spec.det_case = johansen_case_from_int(j.at("spec").at("det_case").get<int>());
  f.beta = to_matrix(j.at("beta"));
  f.beta_row_labels = j.at("beta_row_labels").get<std::vector<std::string>>();
  for (const auto& e : j.at("equations")) {
    VecmEquation q;
    q.dependent = e.at("dependent").get<std::string>();
    q.ect = estimates_from_json(e.at("ect"));
    q.short_run = estimates_from_json(e.at("short_run"));
    q.deterministic = estimates_from_json(e.at("deterministic"));
    q.r2 = to_num(e.at("r2"));
    q.adj_r2 = to_num(e.at("adj_r2"));
    q.f_stat = to_num(e.at("f_stat"));
    q.n_obs = e.at("n_obs").get<int>();
    q.n_params = e.at("n_params").get<int>();
    q.ols = ols_fit_from_json(e.at("ols"));
    f.equations.push_back(std::move(q));
  }
  f.residual_covariance = to_matrix(j.at("residual_covariance"));
  f.t_eff = j.at("t_eff").get<int>();
  return f;
}

inline json to_json(const LongRunFit& f) {
  return {{"dependent", f.dependent}, {"ols", to_json(f.ols)}, {"warning", f.warning ? json(*f.warning) : json(nullptr)}};
}

inline LongRunFit long_run_fit_from_json(const json& j) {
  LongRunFit f;
  f.dependent = j.at("dependent").get<std::string>();
  f.ols = ols_fit_from_json(j.at("ols"));
  if (!j.at("warning").is_null()) f.warning = j.at("warning").get<std::string>();
  return f;
}

}  // namespace coint::report
