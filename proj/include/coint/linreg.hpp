#pragma once

// Ordinary least squares through a Householder QR factorization, with the
// standard error / t-ratio / R-squared / F diagnostics used by every estimator.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coint/error.hpp"
#include "coint/series.hpp"

namespace coint {

struct SummaryStats {
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double f_stat = 0.0;
  bool degenerate = false;  ///< perfect fit: f_stat is +infinity
};

struct OlsFit {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd standard_errors;
  Eigen::VectorXd t_stats;
  Eigen::VectorXd residuals;
  std::vector<std::string> labels;
  double sigma2 = 0.0;
  double rss = 0.0;
  double tss = 0.0;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double f_stat = 0.0;
  bool degenerate = false;
  bool has_intercept = false;
  int n_obs = 0;
  int n_params = 0;

  int index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) return static_cast<int>(i);
    }
    throw detail::make_error(ErrorKind::UnknownVariable, "no regressor labelled '" + label + "'");
  }
};

/// R², adjusted R² and the joint F-statistic of all non-intercept coefficients.
inline SummaryStats summary_stats(double r2, int n_obs, int n_params) {
  if (n_obs <= n_params || n_params < 1) {
    throw detail::make_error(ErrorKind::Underdetermined, "summary statistics need n_obs > n_params >= 1");
  }
  SummaryStats s;
  s.r2 = r2;
  const double resid_df = static_cast<double>(n_obs - n_params);
  s.adj_r2 = 1.0 - (1.0 - r2) * static_cast<double>(n_obs - 1) / resid_df;
  if (r2 >= 1.0) {
    s.adj_r2 = 1.0;
    s.f_stat = std::numeric_limits<double>::infinity();
    s.degenerate = true;
  } else if (n_params == 1) {
    s.f_stat = 0.0;
  } else {
    s.f_stat = (r2 / static_cast<double>(n_params - 1)) / ((1.0 - r2) / resid_df);
  }
  return s;
}

inline SummaryStats summary_stats(const OlsFit& fit) { return summary_stats(fit.r2, fit.n_obs, fit.n_params); }

namespace detail {

// Relative size below which a QR pivot marks a column as a linear combination
// of the columns before it.
inline constexpr double kRankTolerance = 1e-10;

inline void check_design(const Eigen::MatrixXd& x) {
  if (x.cols() > 0 && x.rows() <= x.cols()) {
    throw make_error(ErrorKind::Underdetermined, std::to_string(x.cols()) + " parameters for " +
                                                     std::to_string(x.rows()) + " observations");
  }
}

inline void check_rank(const Eigen::MatrixXd& x, const Eigen::MatrixXd& r, const std::vector<std::string>* labels) {
  for (Eigen::Index j = 0; j < r.cols(); ++j) {
    const double scale = x.col(j).norm();
    if (scale == 0.0 || std::abs(r(j, j)) <= kRankTolerance * scale) {
      Error e(ErrorKind::RankDeficient,
              "regressor " + (labels && static_cast<std::size_t>(j) < labels->size()
                                  ? "'" + (*labels)[static_cast<std::size_t>(j)] + "'"
                                  : std::to_string(j)) +
                  " is collinear with the preceding columns");
      e.column = static_cast<int>(j);
      throw e;
    }
  }
}

inline bool has_constant_column(const Eigen::MatrixXd& x) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (x.rows() > 0 && (x.col(j).array() == x(0, j)).all() && x(0, j) != 0.0) return true;
  }
  return false;
}

}  // namespace detail

/// Least-squares fit of y on the columns of x. R² is centred when x contains a
/// constant column and uncentred otherwise.
inline OlsFit ols_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, std::vector<std::string> labels = {}) {
  if (x.rows() != y.size()) {
    throw detail::make_error(ErrorKind::DimensionMismatch, "design has " + std::to_string(x.rows()) +
                                                               " rows but y has " + std::to_string(y.size()));
  }
  if (x.cols() == 0) throw detail::make_error(ErrorKind::BadParameter, "no regressors");
  detail::check_design(x);

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::Index k = x.cols();
  const Eigen::MatrixXd r = qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  detail::check_rank(x, r, &labels);

  OlsFit fit;
  fit.labels = std::move(labels);
  fit.n_obs = static_cast<int>(x.rows());
  fit.n_params = static_cast<int>(k);
  fit.coefficients = qr.solve(y);
  fit.residuals = y - x * fit.coefficients;
  fit.rss = fit.residuals.squaredNorm();
  fit.sigma2 = fit.rss / static_cast<double>(fit.n_obs - fit.n_params);

  // (X'X)^-1 = R^-1 R^-T, so its diagonal is the squared row norms of R^-1.
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  fit.standard_errors = (fit.sigma2 * r_inv.rowwise().squaredNorm().array()).sqrt();
  fit.t_stats = fit.coefficients.array() / fit.standard_errors.array();

  fit.has_intercept = detail::has_constant_column(x);
  fit.tss = fit.has_intercept ? (y.array() - y.mean()).matrix().squaredNorm() : y.squaredNorm();
  fit.r2 = fit.tss > 0.0 ? 1.0 - fit.rss / fit.tss : 1.0;
  if (fit.r2 > 1.0) fit.r2 = 1.0;
  // Exact fits leave rounding-level residuals; treat them as perfect.
  if (fit.rss <= 1e-28 * std::max(fit.tss, 1.0)) fit.r2 = 1.0;

  if (fit.n_obs > fit.n_params) {
    // Without an intercept the F-test covers every coefficient; shifting the
    // counts by one reuses the centred formulas.
    SummaryStats s = fit.has_intercept ? summary_stats(fit.r2, fit.n_obs, fit.n_params)
                                       : summary_stats(fit.r2, fit.n_obs + 1, fit.n_params + 1);
    fit.adj_r2 = s.adj_r2;
    fit.f_stat = s.f_stat;
    fit.degenerate = s.degenerate;
  }
  return fit;
}

/// Fit with the lag matrix's column labels attached.
inline OlsFit ols_fit(const LagMatrix& x, const Eigen::VectorXd& y) { return ols_fit(x.values, y, x.labels); }

/// Residuals of every column of y after projecting out the columns of x,
/// sharing one factorization. An empty x returns y unchanged.
inline Eigen::MatrixXd residualize(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.cols() == 0) return y;
  if (x.rows() != y.rows()) throw detail::make_error(ErrorKind::DimensionMismatch, "row count mismatch");
  detail::check_design(x);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::Index k = x.cols();
  const Eigen::MatrixXd r = qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  detail::check_rank(x, r, nullptr);
  return y - x * qr.solve(y);
}

}  // namespace coint
