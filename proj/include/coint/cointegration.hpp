#pragma once

// Johansen reduced-rank procedure: concentrated residuals, product-moment
// matrices, the generalized eigenproblem, trace / maximum-eigenvalue
// statistics with critical values and p-values, and sequential rank choice.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include "coint/error.hpp"
#include "coint/johansen_tables.hpp"
#include "coint/linreg.hpp"
#include "coint/series.hpp"
#include "coint/unitroot.hpp"

namespace coint {

/// The five standard deterministic specifications of the VECM.
enum class JohansenCase {
  NoDeterministic = 1,       ///< no constant, no trend
  RestrictedConstant = 2,    ///< constant inside the cointegrating relation
  UnrestrictedConstant = 3,  ///< constant in the VAR, none in the relation
  RestrictedTrend = 4,       ///< trend inside the relation, unrestricted constant
  UnrestrictedTrend = 5,     ///< unrestricted constant and trend
};

inline JohansenCase johansen_case_from_int(int c) {
  if (c < 1 || c > 5) {
    throw detail::make_error(ErrorKind::UnsupportedCase, "deterministic case must be 1..5, got " + std::to_string(c));
  }
  return static_cast<JohansenCase>(c);
}

constexpr std::string_view describe(JohansenCase c) {
  switch (c) {
    case JohansenCase::NoDeterministic: return "no intercept or trend";
    case JohansenCase::RestrictedConstant: return "intercept in CE, no intercept in VAR";
    case JohansenCase::UnrestrictedConstant: return "intercept (no trend) in CE and VAR";
    case JohansenCase::RestrictedTrend: return "intercept and trend in CE, no trend in VAR";
    case JohansenCase::UnrestrictedTrend: return "intercept and quadratic trend";
  }
  return "";
}

/// True when the case appends a deterministic row to the cointegrating vectors.
constexpr bool is_restricted(JohansenCase c) {
  return c == JohansenCase::RestrictedConstant || c == JohansenCase::RestrictedTrend;
}

struct JohansenSpec {
  int var_lags_k = 2;  ///< VAR order in levels; k - 1 lagged differences
  JohansenCase det_case = JohansenCase::UnrestrictedConstant;
  double significance = 0.05;
};

struct ConcentratedResiduals {
  Eigen::MatrixXd r0;  ///< ΔY_t after partialling out short-run terms
  Eigen::MatrixXd r1;  ///< Y_{t-1} (plus restricted deterministics) after the same
  int t_eff = 0;
  std::vector<std::string> level_labels;
};

struct MomentMatrices {
  Eigen::MatrixXd s00, s01, s10, s11;
  int t_eff = 0;
};

struct EigenSolution {
  Eigen::VectorXd eigenvalues;  ///< descending
  Eigen::MatrixXd beta;         ///< columns satisfy beta' S11 beta = I
  Eigen::MatrixXd alpha;        ///< S01 beta
};

struct JohansenResult {
  std::vector<std::string> variables;
  JohansenSpec spec;
  int t_eff = 0;
  std::vector<double> eigenvalues;
  Eigen::MatrixXd beta;
  Eigen::MatrixXd alpha;
  std::vector<std::string> beta_row_labels;
  std::vector<double> trace_stats;
  std::vector<double> max_eigen_stats;
  std::vector<CriticalValues> critical_values_trace;
  std::vector<CriticalValues> critical_values_max;
  std::vector<double> p_values_trace;
  std::vector<double> p_values_max;
  int rank_trace = 0;
  int rank_max = 0;
};

// ---------------------------------------------------------------------------
// Concentration

inline ConcentratedResiduals residual_regressions(const Dataset& d, const JohansenSpec& spec) {
  const int n = static_cast<int>(d.dimension());
  const int k = spec.var_lags_k;
  if (k < 1) throw detail::make_error(ErrorKind::BadParameter, "VAR lag order k must be at least 1");
  if (static_cast<int>(d.length()) < k + n + 5) {
    throw detail::make_error(ErrorKind::TooShort, "Johansen test with n = " + std::to_string(n) +
                                                      ", k = " + std::to_string(k) + " needs at least " +
                                                      std::to_string(k + n + 5) + " observations, got " +
                                                      std::to_string(d.length()));
  }

  std::vector<Series> cols;
  std::vector<std::string> diff_names, level_names;
  for (const auto& s : d.series()) {
    cols.push_back(difference(s).renamed("D(" + s.name() + ")"));
    diff_names.push_back(cols.back().name());
  }
  for (const auto& s : d.series()) {
    cols.push_back(lagged(s, 1).renamed(s.name() + "(-1)"));
    level_names.push_back(cols.back().name());
  }
  const Dataset z(std::move(cols));
  const int trim = k - 1;

  const Deterministics short_run_det = [&] {
    switch (spec.det_case) {
      case JohansenCase::NoDeterministic:
      case JohansenCase::RestrictedConstant: return Deterministics::None;
      case JohansenCase::UnrestrictedConstant:
      case JohansenCase::RestrictedTrend: return Deterministics::Constant;
      case JohansenCase::UnrestrictedTrend: return Deterministics::ConstantTrend;
    }
    return Deterministics::None;
  }();

  LagMatrix z0 = lag_matrix(z, uniform_lags(diff_names, 0, 0), Deterministics::None, trim);
  LagMatrix z1 = lag_matrix(z, uniform_lags(level_names, 0, 0), Deterministics::None, trim);
  LagMatrix z2 = lag_matrix(z, uniform_lags(diff_names, 1, k - 1), short_run_det, trim);

  Eigen::MatrixXd level_block = z1.values;
  std::vector<std::string> labels = z1.labels;
  if (is_restricted(spec.det_case)) {
    const Eigen::Index rows = level_block.rows();
    Eigen::MatrixXd extended(rows, level_block.cols() + 1);
    extended.leftCols(level_block.cols()) = level_block;
    if (spec.det_case == JohansenCase::RestrictedConstant) {
      extended.col(level_block.cols()).setOnes();
      labels.emplace_back("C");
    } else {
      for (Eigen::Index r = 0; r < rows; ++r) extended(r, level_block.cols()) = static_cast<double>(r + 1);
      labels.emplace_back("@TREND");
    }
    level_block = std::move(extended);
  }

  ConcentratedResiduals out;
  out.r0 = residualize(z2.values, z0.values);
  out.r1 = residualize(z2.values, level_block);
  out.t_eff = static_cast<int>(z0.rows());
  out.level_labels = std::move(labels);
  return out;
}

inline MomentMatrices moment_matrices(const Eigen::MatrixXd& r0, const Eigen::MatrixXd& r1, int t_eff) {
  if (r0.rows() != r1.rows()) {
    throw detail::make_error(ErrorKind::DimensionMismatch, "residual blocks have different row counts");
  }
  if (t_eff <= 0) throw detail::make_error(ErrorKind::BadParameter, "t_eff must be positive");
  const double scale = 1.0 / static_cast<double>(t_eff);
  MomentMatrices m;
  m.s00 = scale * (r0.transpose() * r0);
  m.s01 = scale * (r0.transpose() * r1);
  m.s10 = m.s01.transpose();
  m.s11 = scale * (r1.transpose() * r1);
  m.t_eff = t_eff;
  return m;
}

// ---------------------------------------------------------------------------
// Eigenproblem

/// Cyclic Jacobi rotations on a symmetric matrix until the off-diagonal
/// Frobenius norm falls below `tol` times the matrix norm. Returns eigenvalues
/// (unsorted) and overwrites `vectors` with the orthonormal eigenvectors.
inline Eigen::VectorXd jacobi_eigen(Eigen::MatrixXd a, Eigen::MatrixXd& vectors, double tol = 1e-12) {
  const Eigen::Index n = a.rows();
  vectors = Eigen::MatrixXd::Identity(n, n);
  const double norm = std::max(a.norm(), std::numeric_limits<double>::min());
  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  for (int sweep = 0; sweep < 100 && off_norm() > tol * norm; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle zeroing a(p, q).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index r = 0; r < n; ++r) {
          const double arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const double apr = a(p, r), aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = s * apr + c * aqr;
        }
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) {
          const double vrp = vectors(r, p), vrq = vectors(r, q);
          vectors(r, p) = c * vrp - s * vrq;
          vectors(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }
  if (off_norm() > tol * norm) {
    throw detail::make_error(ErrorKind::NotPositiveDefinite, "Jacobi iteration did not converge");
  }
  return a.diagonal();
}

namespace detail {

inline Eigen::LLT<Eigen::MatrixXd> cholesky_or_throw(const Eigen::MatrixXd& m, const char* which) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  bool ok = llt.info() == Eigen::Success;
  if (ok) {
    const Eigen::VectorXd diag = llt.matrixL().toDenseMatrix().diagonal();
    const double largest = m.diagonal().cwiseAbs().maxCoeff();
    // Pivots this small mean the matrix is numerically singular.
    ok = largest > 0.0 && (diag.array() > 1e-7 * std::sqrt(largest)).all();
  }
  if (!ok) {
    throw make_error(ErrorKind::NotPositiveDefinite,
                     std::string(which) + " is not positive definite (collinear levels or too short a sample)");
  }
  return llt;
}

}  // namespace detail

/// Roots of det(λ S11 − S10 S00⁻¹ S01) = 0 via Cholesky reduction of S11 to a
/// symmetric standard problem.
inline EigenSolution solve_eigenproblem(const MomentMatrices& m) {
  const auto llt00 = detail::cholesky_or_throw(m.s00, "S00");
  const auto llt11 = detail::cholesky_or_throw(m.s11, "S11");
  const Eigen::MatrixXd l11 = llt11.matrixL();

  // A = S10 S00^-1 S01 = W'W with W = L00^-1 S01.
  const Eigen::MatrixXd w = llt00.matrixL().solve(m.s01);
  // C = L11^-1 A L11^-T = (W L11^-T)'(W L11^-T).
  const Eigen::MatrixXd u = l11.triangularView<Eigen::Lower>().solve(w.transpose()).transpose();
  Eigen::MatrixXd c = u.transpose() * u;
  c = 0.5 * (c + c.transpose());

  Eigen::MatrixXd vectors;
  const Eigen::VectorXd raw = jacobi_eigen(c, vectors);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(raw.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return raw(a) > raw(b); });

  const Eigen::Index p = raw.size();
  EigenSolution sol;
  sol.eigenvalues.resize(p);
  Eigen::MatrixXd v_sorted(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    double lambda = raw(order[static_cast<std::size_t>(i)]);
    if (lambda < 0.0 && lambda > -1e-10) lambda = 0.0;
    if (lambda < 0.0 || lambda >= 1.0) {
      throw detail::make_error(ErrorKind::NotPositiveDefinite,
                               "eigenvalue " + std::to_string(lambda) + " outside [0, 1); residual moments are singular");
    }
    sol.eigenvalues(i) = lambda;
    v_sorted.col(i) = vectors.col(order[static_cast<std::size_t>(i)]);
  }
  sol.beta = l11.transpose().triangularView<Eigen::Upper>().solve(v_sorted);
  sol.alpha = m.s01 * sol.beta;
  return sol;
}

// ---------------------------------------------------------------------------
// Statistics

namespace detail {

inline void check_eigenvalues(std::span<const double> eigenvalues, int t_eff) {
  if (t_eff <= 0) throw make_error(ErrorKind::BadParameter, "t_eff must be positive");
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (!(eigenvalues[i] >= 0.0 && eigenvalues[i] < 1.0)) {
      throw make_error(ErrorKind::BadParameter, "eigenvalues must lie in [0, 1)");
    }
    if (i > 0 && eigenvalues[i] > eigenvalues[i - 1]) {
      throw make_error(ErrorKind::BadParameter, "eigenvalues must be sorted in descending order");
    }
  }
}

}  // namespace detail

/// trace(r) = −T Σ_{i>r} ln(1 − λ_i), for r = 0..n−1.
inline std::vector<double> trace_statistics(std::span<const double> eigenvalues, int t_eff) {
  detail::check_eigenvalues(eigenvalues, t_eff);
  const std::size_t n = eigenvalues.size();
  std::vector<double> out(n);
  double acc = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    acc += -static_cast<double>(t_eff) * std::log1p(-eigenvalues[i]);
    out[i] = acc;
  }
  return out;
}

/// maxeig(r) = −T ln(1 − λ_{r+1}), for r = 0..n−1.
inline std::vector<double> max_eigen_statistics(std::span<const double> eigenvalues, int t_eff) {
  detail::check_eigenvalues(eigenvalues, t_eff);
  std::vector<double> out(eigenvalues.size());
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    out[i] = -static_cast<double>(t_eff) * std::log1p(-eigenvalues[i]);
  }
  return out;
}

enum class RankTest { Trace, MaxEigen };

struct JohansenCriticalValues {
  CriticalValues trace;
  CriticalValues max_eigen;
};

inline JohansenCriticalValues johansen_critical_values(int n_minus_r, JohansenCase det_case) {
  const auto& e = johansen_tables::entry(static_cast<int>(det_case), n_minus_r);
  return {{e.trace_cv[2], e.trace_cv[1], e.trace_cv[0]}, {e.max_cv[2], e.max_cv[1], e.max_cv[0]}};
}

/// Upper-tail probability from a gamma distribution matched to the first two
/// moments of the asymptotic null distribution.
inline double johansen_pvalue(double stat, int n_minus_r, JohansenCase det_case, RankTest kind) {
  if (!(stat >= 0.0)) throw detail::make_error(ErrorKind::BadParameter, "test statistic must be non-negative");
  const auto& e = johansen_tables::entry(static_cast<int>(det_case), n_minus_r);
  const double mean = kind == RankTest::Trace ? e.trace_mean : e.max_mean;
  const double var = kind == RankTest::Trace ? e.trace_var : e.max_var;
  const double shape = mean * mean / var;
  const double scale = var / mean;
  if (stat == 0.0) return 1.0;
  return boost::math::gamma_q(shape, stat / scale);
}

/// Smallest r whose statistic does not exceed its critical value; n if every
/// hypothesis is rejected.
inline int select_rank(std::span<const double> stats, std::span<const double> cvs) {
  if (stats.size() != cvs.size()) {
    throw detail::make_error(ErrorKind::DimensionMismatch, "statistics and critical values differ in length");
  }
  for (std::size_t r = 0; r < stats.size(); ++r) {
    if (stats[r] <= cvs[r]) return static_cast<int>(r);
  }
  return static_cast<int>(stats.size());
}

inline JohansenResult johansen_test(const Dataset& d, const JohansenSpec& spec) {
  const ConcentratedResiduals conc = residual_regressions(d, spec);
  const MomentMatrices m = moment_matrices(conc.r0, conc.r1, conc.t_eff);
  const EigenSolution sol = solve_eigenproblem(m);
  const int n = static_cast<int>(d.dimension());

  JohansenResult res;
  res.variables = d.names();
  res.spec = spec;
  res.t_eff = conc.t_eff;
  res.eigenvalues.assign(sol.eigenvalues.data(), sol.eigenvalues.data() + n);
  res.beta = sol.beta.leftCols(n);
  res.alpha = sol.alpha.leftCols(n);
  res.beta_row_labels = conc.level_labels;
  res.trace_stats = trace_statistics(res.eigenvalues, res.t_eff);
  res.max_eigen_stats = max_eigen_statistics(res.eigenvalues, res.t_eff);

  std::vector<double> cv_trace, cv_max;
  for (int r = 0; r < n; ++r) {
    const auto cv = johansen_critical_values(n - r, spec.det_case);
    res.critical_values_trace.push_back(cv.trace);
    res.critical_values_max.push_back(cv.max_eigen);
    cv_trace.push_back(cv.trace.at(spec.significance));
    cv_max.push_back(cv.max_eigen.at(spec.significance));
    res.p_values_trace.push_back(johansen_pvalue(res.trace_stats[static_cast<std::size_t>(r)], n - r,
                                                 spec.det_case, RankTest::Trace));
    res.p_values_max.push_back(johansen_pvalue(res.max_eigen_stats[static_cast<std::size_t>(r)], n - r,
                                               spec.det_case, RankTest::MaxEigen));
  }
  res.rank_trace = select_rank(res.trace_stats, cv_trace);
  res.rank_max = select_rank(res.max_eigen_stats, cv_max);
  return res;
}

}  // namespace coint
