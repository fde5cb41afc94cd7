#pragma once

// Result tables and their Markdown, plain-text and CSV renderings. Rendered
// numbers use 6 decimals; VECM cells follow the usual "coef (se) [t]"
// layout with 6/5/5 decimals.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "coint/cointegration.hpp"
#include "coint/ingest/csv.hpp"
#include "coint/unitroot.hpp"
#include "coint/vecm.hpp"

namespace coint::report {

struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
};

inline std::string fixed(double v, int decimals = 6) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);  // no "-0.000000"
  return s;
}

/// "0.05" style label for a significance level.
inline std::string level_label(double significance) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", significance);
  if (std::abs(significance * 100.0 - std::round(significance * 100.0)) > 1e-9) std::snprintf(buf, sizeof buf, "%g", significance);
  return buf;
}

inline std::string cell(const Estimate& e) { return fixed(e.coef, 6) + " (" + fixed(e.se, 5) + ") [" + fixed(e.t, 5) + "]"; }

inline std::string describe(Deterministics d) {
  switch (d) {
    case Deterministics::None: return "no constant";
    case Deterministics::Constant: return "constant";
    case Deterministics::ConstantTrend: return "constant and trend";
  }
  return "";
}

inline std::string describe_lags(const AdfSpec& s) {
  if (s.selection == LagSelection::Fixed) return std::to_string(s.lags) + " lagged difference(s)";
  std::string how = s.selection == LagSelection::Bic ? "Schwarz (BIC)" : "Akaike (AIC)";
  return "lag length by " + how + (s.max_lag ? ", maximum " + std::to_string(*s.max_lag) : "");
}

// ---------------------------------------------------------------------------

inline Table adf_table(const std::vector<IntegrationOrder>& orders) {
  Table t;
  t.title = "Unit root test (ADF)";
  t.header = {"Variable", "Parameter", "t-statistics", "P-Value", "Decision"};
  for (const auto& o : orders) {
    t.rows.push_back({o.variable, std::string(to_string(Stage::Level)), fixed(o.level_result.t_stat),
                      fixed(o.level_result.p_value), std::string(to_string(o.order))});
    t.rows.push_back({"", std::string(to_string(Stage::FirstDifference)), fixed(o.diff_result.t_stat),
                      fixed(o.diff_result.p_value), ""});
  }
  if (!orders.empty()) {
    const auto& lv = orders.front().level_result.spec;
    const auto& df = orders.front().diff_result.spec;
    t.notes.push_back("Level regressions include " + describe(lv.deterministic) + "; first-difference regressions include " +
                      describe(df.deterministic) + "; " + describe_lags(lv) + ".");
    t.notes.push_back("The unit root is rejected when P-Value < " + level_label(lv.significance) + ".");
  }
  return t;
}

inline std::string indicates(const std::string& test, int rank, int n, double significance) {
  const std::string level = level_label(significance);
  if (rank == 0) return test + " test indicates no cointegration at the " + level + " level";
  if (rank == n) return test + " test indicates " + std::to_string(rank) + " cointegrating eqn(s) (full rank) at the " + level + " level";
  return test + " test indicates " + std::to_string(rank) + " cointegrating eqn(s) at the " + level + " level";
}

/// Trace and maximum-eigenvalue tables, in that order.
inline std::vector<Table> johansen_rank_tables(const JohansenResult& r) {
  const double sig = r.spec.significance;
  const int n = static_cast<int>(r.eigenvalues.size());
  std::vector<Table> out;
  for (const bool trace : {true, false}) {
    Table t;
    t.title = std::string("Unrestricted Cointegration Rank Test (") + (trace ? "Trace" : "Maximum Eigenvalue") + ")";
    t.header = {"Hypothesized No. of CE(s)", "Eigenvalue", trace ? "Trace Statistic" : "Max-Eigen Statistic",
                level_label(sig) + " Critical Value", "Prob.**"};
    const auto& stats = trace ? r.trace_stats : r.max_eigen_stats;
    const auto& cvs = trace ? r.critical_values_trace : r.critical_values_max;
    const auto& ps = trace ? r.p_values_trace : r.p_values_max;
    for (int i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      const double cv = cvs[u].at(sig);
      std::string hyp = i == 0 ? "None" : "At most " + std::to_string(i);
      if (stats[u] > cv) hyp += " *";
      t.rows.push_back({hyp, fixed(r.eigenvalues[u]), fixed(stats[u]), fixed(cv), fixed(ps[u])});
    }
    t.notes.push_back(indicates(trace ? "Trace" : "Max-eigenvalue", trace ? r.rank_trace : r.rank_max, n, sig));
    t.notes.push_back("* denotes rejection of the hypothesis at the " + level_label(sig) + " level");
    t.notes.push_back("**p-values from a gamma approximation to the asymptotic null distribution");
    out.push_back(std::move(t));
  }
  return out;
}

/// VECM table: ECT loadings, lagged differences, deterministics, then R²,
/// adjusted R² and F per equation.
inline Table vecm_table(const VecmFit& f) {
  Table t;
  t.title = "Vector Error Correction Estimates";
  t.header = {"Error Correction:"};
  for (const auto& e : f.equations) t.header.push_back(e.dependent);
  if (f.equations.empty()) return t;
  const auto terms = f.equations.front().all_terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::vector<std::string> row{terms[i].label};
    for (const auto& e : f.equations) row.push_back(cell(e.all_terms()[i]));
    t.rows.push_back(std::move(row));
  }
  auto stat_row = [&](const char* name, double VecmEquation::*field) {
    std::vector<std::string> row{name};
    for (const auto& e : f.equations) row.push_back(fixed(e.*field));
    t.rows.push_back(std::move(row));
  };
  stat_row("R-squared", &VecmEquation::r2);
  stat_row("Adj. R-squared", &VecmEquation::adj_r2);
  stat_row("F-statistic", &VecmEquation::f_stat);
  t.notes.push_back("Cells: coefficient (standard error) [t-statistic]; " + std::to_string(f.t_eff) +
                    " observations after adjustments.");
  return t;
}

/// Normalized cointegrating vectors, one column per CointEq.
inline Table cointegrating_table(const VecmFit& f) {
  Table t;
  t.title = "Cointegrating Equation(s)";
  t.header = {"Cointegrating Eq:"};
  for (Eigen::Index j = 0; j < f.beta.cols(); ++j) t.header.push_back("CointEq" + std::to_string(j + 1));
  for (Eigen::Index i = 0; i < f.beta.rows(); ++i) {
    const auto& label = f.beta_row_labels[static_cast<std::size_t>(i)];
    std::vector<std::string> row{label == "C" || label == "@TREND" ? label : label + "(-1)"};
    for (Eigen::Index j = 0; j < f.beta.cols(); ++j) row.push_back(fixed(f.beta(i, j)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table long_run_table(const LongRunFit& f) {
  Table t;
  t.title = "Long-run regression of " + f.dependent + " (levels, OLS)";
  t.header = {"Variable", "Coefficient", "Std. Error", "t-Statistic"};
  for (std::size_t i = 0; i < f.ols.labels.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    t.rows.push_back({f.ols.labels[i], fixed(f.ols.coefficients(k)), fixed(f.ols.standard_errors(k)), fixed(f.ols.t_stats(k))});
  }
  t.rows.push_back({"R-squared", fixed(f.ols.r2), "", ""});
  t.rows.push_back({"Adj. R-squared", fixed(f.ols.adj_r2), "", ""});
  if (f.warning) t.notes.push_back("Warning: " + *f.warning + ".");
  return t;
}

// ---------------------------------------------------------------------------

inline std::string markdown_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

inline std::string render_markdown(const Table& t) {
  std::string out = "### " + t.title + "\n\n|";
  for (const auto& h : t.header) out += " " + markdown_escape(h) + " |";
  out += "\n|";
  for (std::size_t i = 0; i < t.header.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
  out += "\n";
  for (const auto& row : t.rows) {
    out += "|";
    for (const auto& c : row) out += " " + markdown_escape(c) + " |";
    out += "\n";
  }
  if (!t.notes.empty()) out += "\n";
  for (const auto& n : t.notes) out += n + "  \n";
  return out;
}

inline std::string render_text(const Table& t) {
  std::vector<std::size_t> width(t.header.size(), 0);
  auto widen = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  };
  widen(t.header);
  for (const auto& row : t.rows) widen(row);
  auto line = [&](const std::vector<std::string>& row) {
    std::string s;
    for (std::size_t i = 0; i < width.size(); ++i) {
      const std::string& c = i < row.size() ? row[i] : std::string();
      const std::string pad(width[i] - c.size(), ' ');
      s += i == 0 ? c + pad : "  " + pad + c;
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  const std::string rule(total > 2 ? total - 2 : total, '-');
  std::string out = t.title + "\n" + rule + "\n" + line(t.header) + rule + "\n";
  for (const auto& row : t.rows) out += line(row);
  out += rule + "\n";
  for (const auto& n : t.notes) out += n + "\n";
  return out;
}

// Machine-readable tables: full precision, one record per number.

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + ingest::quote_field(fields[i], ',');
  return out + "\n";
}

inline std::string adf_csv(const std::vector<IntegrationOrder>& orders) {
  using ingest::format_double;
  std::string out = csv_row({"variable", "stage", "deterministic", "lags", "n_obs", "t_stat", "p_value", "cv_1", "cv_5",
                             "cv_10", "reject_unit_root", "decision"});
  for (const auto& o : orders) {
    for (const AdfResult* r : {&o.level_result, &o.diff_result}) {
      out += csv_row({o.variable, r->stage == Stage::Level ? "level" : "first-difference", describe(r->spec.deterministic),
                      std::to_string(r->lags_used), std::to_string(r->n_obs), format_double(r->t_stat),
                      format_double(r->p_value), format_double(r->critical_values.one),
                      format_double(r->critical_values.five), format_double(r->critical_values.ten),
                      r->reject_unit_root ? "true" : "false", std::string(to_string(o.order))});
    }
  }
  return out;
}

inline std::string johansen_csv(const JohansenResult& r) {
  using ingest::format_double;
  std::string out = csv_row({"test", "rank_under_null", "eigenvalue", "statistic", "cv_10", "cv_5", "cv_1", "p_value"});
  for (const bool trace : {true, false}) {
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
      const auto& cv = trace ? r.critical_values_trace[i] : r.critical_values_max[i];
      out += csv_row({trace ? "trace" : "max-eigen", std::to_string(i), format_double(r.eigenvalues[i]),
                      format_double(trace ? r.trace_stats[i] : r.max_eigen_stats[i]), format_double(cv.ten),
                      format_double(cv.five), format_double(cv.one),
                      format_double(trace ? r.p_values_trace[i] : r.p_values_max[i])});
    }
  }
  return out;
}

inline std::string vecm_csv(const VecmFit& f) {
  using ingest::format_double;
  std::string out = csv_row({"equation", "term", "coef", "se", "t"});
  for (const auto& e : f.equations) {
    for (const auto& est : e.all_terms()) {
      out += csv_row({e.dependent, est.label, format_double(est.coef), format_double(est.se), format_double(est.t)});
    }
    out += csv_row({e.dependent, "R-squared", format_double(e.r2), "", ""});
    out += csv_row({e.dependent, "Adj. R-squared", format_double(e.adj_r2), "", ""});
    out += csv_row({e.dependent, "F-statistic", format_double(e.f_stat), "", ""});
  }
  return out;
}

}  // namespace coint::report
