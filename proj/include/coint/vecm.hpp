#pragma once

// Two-step VECM: cointegrating vectors from the Johansen step, then one OLS
// regression per equation on the lagged error-correction terms, lagged
// differences and unrestricted deterministics. Also the static long-run
// regression of the dependent variable on the others.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coint/cointegration.hpp"
#include "coint/error.hpp"
#include "coint/linreg.hpp"
#include "coint/series.hpp"

namespace coint {

struct VecmSpec {
  int rank = 1;
  int diff_lags = 1;  ///< k - 1
  JohansenCase det_case = JohansenCase::UnrestrictedConstant;
};

struct Estimate {
  std::string label;
  double coef = 0.0;
  double se = 0.0;
  double t = 0.0;
};

struct VecmEquation {
  std::string dependent;
  std::vector<Estimate> ect;        ///< loadings on CointEq1..r
  std::vector<Estimate> short_run;  ///< lagged differences
  std::vector<Estimate> deterministic;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double f_stat = 0.0;
  int n_obs = 0;
  int n_params = 0;
  OlsFit ols;

  std::vector<Estimate> all_terms() const {
    std::vector<Estimate> out = ect;
    out.insert(out.end(), short_run.begin(), short_run.end());
    out.insert(out.end(), deterministic.begin(), deterministic.end());
    return out;
  }
};

struct VecmFit {
  std::vector<std::string> variables;
  VecmSpec spec;
  Eigen::MatrixXd beta;  ///< normalized: leading rank × rank block is the identity
  std::vector<std::string> beta_row_labels;
  std::vector<VecmEquation> equations;
  Eigen::MatrixXd residual_covariance;
  int t_eff = 0;
};

struct LongRunFit {
  std::string dependent;
  OlsFit ols;
  std::optional<std::string> warning;
};

namespace detail {

inline Eigen::Index beta_rows(std::size_t n, JohansenCase c) {
  return static_cast<Eigen::Index>(n) + (is_restricted(c) ? 1 : 0);
}

inline std::string diff_label(const std::string& name, int lag) {
  return "D(" + name + (lag == 0 ? ")" : "(-" + std::to_string(lag) + "))");
}

inline Deterministics unrestricted_terms(JohansenCase c) {
  switch (c) {
    case JohansenCase::NoDeterministic:
    case JohansenCase::RestrictedConstant: return Deterministics::None;
    case JohansenCase::UnrestrictedConstant:
    case JohansenCase::RestrictedTrend: return Deterministics::Constant;
    case JohansenCase::UnrestrictedTrend: return Deterministics::ConstantTrend;
  }
  return Deterministics::None;
}

}  // namespace detail

/// Scales the first `rank` columns of beta so their leading rank × rank block
/// is the identity (first coefficient 1 when rank = 1).
inline Eigen::MatrixXd normalize_beta(const Eigen::MatrixXd& beta, int rank) {
  if (rank < 1 || rank > beta.cols() || rank > beta.rows()) {
    throw detail::make_error(ErrorKind::InvalidRank, "cannot normalize " + std::to_string(rank) + " vectors");
  }
  const Eigen::MatrixXd b = beta.leftCols(rank);
  const Eigen::MatrixXd head = b.topRows(rank);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(head);
  if (!lu.isInvertible()) {
    throw detail::make_error(ErrorKind::RankDeficient, "leading block of the cointegrating vectors is singular");
  }
  return b * lu.inverse();
}

/// ECT_j(t) = beta_j' [Y_t; d_t], where d_t is the restricted deterministic
/// term (1 or t = 1, 2, ...) for cases 2 and 4.
inline std::vector<Series> build_ect(const Dataset& d, const Eigen::MatrixXd& beta, JohansenCase det_case) {
  if (beta.rows() != detail::beta_rows(d.dimension(), det_case)) {
    throw detail::make_error(ErrorKind::DimensionMismatch,
                             "cointegrating vectors have " + std::to_string(beta.rows()) + " rows, expected " +
                                 std::to_string(detail::beta_rows(d.dimension(), det_case)));
  }
  if (beta.cols() < 1) throw detail::make_error(ErrorKind::DimensionMismatch, "no cointegrating vectors");
  Eigen::MatrixXd y = d.matrix();
  if (is_restricted(det_case)) {
    Eigen::MatrixXd ext(y.rows(), y.cols() + 1);
    ext.leftCols(y.cols()) = y;
    for (Eigen::Index t = 0; t < y.rows(); ++t) {
      ext(t, y.cols()) = det_case == JohansenCase::RestrictedConstant ? 1.0 : static_cast<double>(t + 1);
    }
    y = std::move(ext);
  }
  const Eigen::MatrixXd ect = y * beta;
  std::vector<Series> out;
  for (Eigen::Index j = 0; j < ect.cols(); ++j) {
    out.emplace_back("CointEq" + std::to_string(j + 1), d.start_year(),
                     std::vector<double>(ect.col(j).data(), ect.col(j).data() + ect.rows()));
  }
  return out;
}

inline VecmFit estimate_vecm(const Dataset& d, const VecmSpec& spec, const Eigen::MatrixXd& beta) {
  const int n = static_cast<int>(d.dimension());
  if (spec.rank < 1 || spec.rank >= n) {
    throw detail::make_error(ErrorKind::InvalidRank, "VECM rank must lie in [1, " + std::to_string(n - 1) +
                                                         "], got " + std::to_string(spec.rank));
  }
  if (spec.diff_lags < 0) throw detail::make_error(ErrorKind::BadParameter, "negative number of lagged differences");
  if (beta.cols() < spec.rank) {
    throw detail::make_error(ErrorKind::DimensionMismatch, "fewer cointegrating vectors than the requested rank");
  }
  const Eigen::MatrixXd beta_n = normalize_beta(beta, spec.rank);
  const std::vector<Series> ects = build_ect(d, beta_n, spec.det_case);

  const Deterministics det = detail::unrestricted_terms(spec.det_case);
  const int n_det = det == Deterministics::None ? 0 : det == Deterministics::Constant ? 1 : 2;
  const int n_params = spec.rank + n * spec.diff_lags + n_det;
  if (static_cast<int>(d.length()) <= spec.diff_lags + 1 + n_params) {
    throw detail::make_error(ErrorKind::TooShort, "VECM with " + std::to_string(n_params) +
                                                      " parameters per equation needs more than " +
                                                      std::to_string(spec.diff_lags + 1 + n_params) +
                                                      " observations, got " + std::to_string(d.length()));
  }

  std::vector<Series> cols;
  std::vector<std::string> diff_names;
  for (const auto& s : d.series()) {
    cols.push_back(difference(s).renamed("D(" + s.name() + ")"));
    diff_names.push_back(cols.back().name());
  }
  LagSpec regressors;
  for (const auto& e : ects) {
    cols.push_back(lagged(e, 1));
    regressors.push_back({e.name(), 0});
  }
  for (int lag = 1; lag <= spec.diff_lags; ++lag) {
    for (const auto& name : diff_names) regressors.push_back({name, lag});
  }
  const Dataset z(std::move(cols));
  LagMatrix x = lag_matrix(z, regressors, det, spec.diff_lags);
  for (std::size_t c = static_cast<std::size_t>(spec.rank); c < regressors.size(); ++c) {
    const auto& name = d[(c - static_cast<std::size_t>(spec.rank)) % static_cast<std::size_t>(n)].name();
    x.labels[c] = detail::diff_label(name, regressors[c].lag);
  }
  const LagMatrix y = lag_matrix(z, uniform_lags(diff_names, 0, 0), Deterministics::None, spec.diff_lags);

  VecmFit fit;
  fit.variables = d.names();
  fit.spec = spec;
  fit.beta = beta_n;
  fit.t_eff = static_cast<int>(x.rows());
  fit.beta_row_labels = d.names();
  if (spec.det_case == JohansenCase::RestrictedConstant) fit.beta_row_labels.emplace_back("C");
  if (spec.det_case == JohansenCase::RestrictedTrend) fit.beta_row_labels.emplace_back("@TREND");

  Eigen::MatrixXd resid(x.values.rows(), n);
  for (int i = 0; i < n; ++i) {
    VecmEquation eq;
    eq.dependent = detail::diff_label(d[static_cast<std::size_t>(i)].name(), 0);
    eq.ols = ols_fit(x, y.values.col(i));
    for (int c = 0; c < eq.ols.n_params; ++c) {
      Estimate e{x.labels[static_cast<std::size_t>(c)], eq.ols.coefficients(c), eq.ols.standard_errors(c),
                 eq.ols.t_stats(c)};
      if (c < spec.rank) {
        eq.ect.push_back(std::move(e));
      } else if (c < spec.rank + n * spec.diff_lags) {
        eq.short_run.push_back(std::move(e));
      } else {
        eq.deterministic.push_back(std::move(e));
      }
    }
    eq.r2 = eq.ols.r2;
    eq.adj_r2 = eq.ols.adj_r2;
    eq.f_stat = eq.ols.f_stat;
    eq.n_obs = eq.ols.n_obs;
    eq.n_params = eq.ols.n_params;
    resid.col(i) = eq.ols.residuals;
    fit.equations.push_back(std::move(eq));
  }
  fit.residual_covariance = resid.transpose() * resid / static_cast<double>(fit.t_eff);
  return fit;
}

/// Static regression of the first series on a constant and the remaining
/// series. With `inputs_integrated` the result carries a spurious-regression
/// warning: the usual t and F inference does not apply to I(1) levels.
inline LongRunFit long_run_ols(const Dataset& d, bool inputs_integrated = false) {
  if (d.dimension() < 2) {
    throw detail::make_error(ErrorKind::BadParameter, "long-run regression needs a dependent and at least one regressor");
  }
  const Eigen::MatrixXd m = d.matrix();
  Eigen::MatrixXd x(m.rows(), m.cols());
  x.col(0).setOnes();
  x.rightCols(m.cols() - 1) = m.rightCols(m.cols() - 1);
  std::vector<std::string> labels{"C"};
  for (std::size_t j = 1; j < d.dimension(); ++j) labels.push_back(d[j].name());

  LongRunFit out;
  out.dependent = d[0].name();
  out.ols = ols_fit(x, m.col(0), std::move(labels));
  if (inputs_integrated) {
    out.warning =
        "variables are I(1): levels regression standard errors and t-ratios are not valid for inference "
        "(spurious-regression risk); use the cointegrating vector and VECM instead";
  }
  return out;
}

}  // namespace coint
