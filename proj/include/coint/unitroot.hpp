#pragma once

// Augmented Dickey-Fuller test and the I(0) / I(1) / I(2+) classification.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "coint/adf_tables.hpp"
#include "coint/error.hpp"
#include "coint/linreg.hpp"
#include "coint/series.hpp"

namespace coint {

enum class LagSelection { Fixed, Aic, Bic };

constexpr std::string_view to_string(LagSelection s) {
  switch (s) {
    case LagSelection::Fixed: return "fixed";
    case LagSelection::Aic: return "aic";
    case LagSelection::Bic: return "bic";
  }
  return "fixed";
}

inline LagSelection parse_lag_selection(std::string_view s) {
  if (s == "fixed") return LagSelection::Fixed;
  if (s == "aic") return LagSelection::Aic;
  if (s == "bic" || s == "sic") return LagSelection::Bic;
  throw detail::make_error(ErrorKind::BadParameter, "unknown lag selection '" + std::string(s) + "'");
}

/// Accepts "n"/"none", "c"/"constant", "ct"/"constant+trend".
inline Deterministics parse_deterministics(std::string_view s) {
  if (s == "n" || s == "nc" || s == "none") return Deterministics::None;
  if (s == "c" || s == "constant") return Deterministics::Constant;
  if (s == "ct" || s == "constant+trend" || s == "trend") return Deterministics::ConstantTrend;
  throw detail::make_error(ErrorKind::UnsupportedCase, "unknown deterministic case '" + std::string(s) + "'");
}

struct AdfSpec {
  Deterministics deterministic = Deterministics::ConstantTrend;
  LagSelection selection = LagSelection::Bic;
  int lags = 0;                   ///< used when selection == Fixed
  std::optional<int> max_lag;     ///< bound for automatic selection; defaulted from the length
  double significance = 0.05;
};

struct CriticalValues {
  double one = 0.0;
  double five = 0.0;
  double ten = 0.0;

  double at(double level) const {
    if (level <= 0.01) return one;
    if (level <= 0.05) return five;
    return ten;
  }
};

enum class Stage { Level, FirstDifference };

constexpr std::string_view to_string(Stage s) { return s == Stage::Level ? "Level" : "First diff."; }

struct AdfResult {
  std::string variable;
  Stage stage = Stage::Level;
  double t_stat = 0.0;
  double gamma = 0.0;  ///< coefficient on the lagged level
  double p_value = 1.0;
  CriticalValues critical_values;
  int lags_used = 0;
  int n_obs = 0;
  AdfSpec spec;
  bool reject_unit_root = false;
  std::string pvalue_method = "mackinnon-1994-asymptotic";
};

enum class Order { I0, I1, I2Plus };

constexpr std::string_view to_string(Order o) {
  switch (o) {
    case Order::I0: return "I(0)";
    case Order::I1: return "I(1)";
    case Order::I2Plus: return "I(2+)";
  }
  return "I(2+)";
}

struct IntegrationOrder {
  std::string variable;
  Order order = Order::I2Plus;
  AdfResult level_result;
  AdfResult diff_result;
};

namespace detail {

inline std::size_t case_index(Deterministics d) {
  switch (d) {
    case Deterministics::None: return 0;
    case Deterministics::Constant: return 1;
    case Deterministics::ConstantTrend: return 2;
  }
  throw make_error(ErrorKind::UnsupportedCase, "deterministic case");
}

inline double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace detail

/// Finite-sample Dickey-Fuller critical values from the response surface.
inline CriticalValues adf_critical_values(Deterministics det, int t_eff) {
  if (t_eff < 10) {
    throw detail::make_error(ErrorKind::TooShort, "critical values need at least 10 observations, got " +
                                                      std::to_string(t_eff));
  }
  const auto& rows = adf_tables::kCriticalSurface[detail::case_index(det)];
  const double inv = 1.0 / static_cast<double>(t_eff);
  auto eval = [inv](const std::array<double, 4>& b) { return b[0] + inv * (b[1] + inv * (b[2] + inv * b[3])); };
  return {eval(rows[0]), eval(rows[1]), eval(rows[2])};
}

/// Asymptotic p-value of a Dickey-Fuller t-ratio (normal-quantile polynomial).
inline double adf_pvalue(double t, Deterministics det) {
  if (std::isnan(t)) throw detail::make_error(ErrorKind::BadParameter, "ADF statistic is NaN");
  const std::size_t c = detail::case_index(det);
  if (t > adf_tables::kTauMax[c]) return 1.0;
  if (t < adf_tables::kTauMin[c]) return 0.0;
  double z = 0.0;
  if (t <= adf_tables::kTauStar[c]) {
    const auto& p = adf_tables::kSmallP[c];
    z = p[0] + t * (p[1] + t * p[2]);
  } else {
    const auto& p = adf_tables::kLargeP[c];
    z = p[0] + t * (p[1] + t * (p[2] + t * p[3]));
  }
  return detail::standard_normal_cdf(z);
}

/// Largest automatic lag for a series of `length` observations: the Schwert
/// rule 12 (T/100)^(1/4), kept below length/3 and leaving 10 observations.
inline int default_max_lag(std::size_t length) {
  const double n = static_cast<double>(length);
  int schwert = static_cast<int>(std::floor(12.0 * std::pow(n / 100.0, 0.25)));
  int third = static_cast<int>(std::ceil(n / 3.0)) - 1;
  int room = static_cast<int>(length) - 10;
  return std::max(0, std::min({schwert, third, room}));
}

namespace detail {

struct AdfDesign {
  Dataset data;
  std::string level_name;
  std::string diff_name;
};

inline AdfDesign adf_design(const Series& s) {
  Series dy = difference(s).renamed("D(" + s.name() + ")");
  Series ylag = lagged(s, 1).renamed(s.name() + "(-1)");
  std::string dname = dy.name();
  std::string lname = ylag.name();
  return {Dataset({std::move(dy), std::move(ylag)}), std::move(lname), std::move(dname)};
}

inline OlsFit adf_regression(const AdfDesign& design, int lags, Deterministics det, std::optional<int> trim) {
  LagSpec spec{{design.level_name, 0}};
  for (int i = 1; i <= lags; ++i) spec.push_back({design.diff_name, i});
  LagMatrix x = lag_matrix(design.data, spec, det, trim);
  LagMatrix y = lag_matrix(design.data, {{design.diff_name, 0}}, Deterministics::None, x.trim);
  return ols_fit(x, y.values.col(0));
}

inline double information_criterion(const OlsFit& fit, LagSelection sel) {
  const double n = static_cast<double>(fit.n_obs);
  const double k = static_cast<double>(fit.n_params);
  const double fit_term = std::log(fit.rss / n);
  return sel == LagSelection::Aic ? fit_term + 2.0 * k / n : fit_term + k * std::log(n) / n;
}

}  // namespace detail

/// Regression of the differenced series on its lagged level, lagged
/// differences and deterministic terms; the statistic is the t-ratio on the level.
inline AdfResult adf_test(const Series& s, const AdfSpec& spec, Stage stage = Stage::Level) {
  if (!(spec.significance > 0.0 && spec.significance < 1.0)) {
    throw detail::make_error(ErrorKind::BadParameter, "significance must lie in (0, 1)");
  }
  const int length = static_cast<int>(s.size());
  int lags = spec.lags;
  if (spec.selection == LagSelection::Fixed) {
    if (lags < 0) throw detail::make_error(ErrorKind::BadParameter, "negative ADF lag");
  } else {
    lags = spec.max_lag.value_or(default_max_lag(s.size()));
    if (lags < 0 || 3 * lags >= length) {
      throw detail::make_error(ErrorKind::BadParameter, "ADF max lag must lie in [0, length/3), got " +
                                                            std::to_string(lags));
    }
  }
  if (length < lags + 10) {
    throw detail::make_error(ErrorKind::TooShort, "ADF on '" + s.name() + "' needs at least " +
                                                      std::to_string(lags + 10) + " observations, got " +
                                                      std::to_string(length));
  }

  const detail::AdfDesign design = detail::adf_design(s);
  if (spec.selection != LagSelection::Fixed) {
    const int max_lag = lags;
    double best = std::numeric_limits<double>::infinity();
    for (int p = 0; p <= max_lag; ++p) {
      const double ic = detail::information_criterion(
          detail::adf_regression(design, p, spec.deterministic, max_lag), spec.selection);
      if (ic < best - 1e-12) {
        best = ic;
        lags = p;
      }
    }
  }

  const OlsFit fit = detail::adf_regression(design, lags, spec.deterministic, std::nullopt);
  AdfResult r;
  r.variable = s.name();
  r.stage = stage;
  r.spec = spec;
  r.lags_used = lags;
  r.n_obs = fit.n_obs;
  r.gamma = fit.coefficients(0);
  r.t_stat = fit.t_stats(0);
  r.p_value = adf_pvalue(r.t_stat, spec.deterministic);
  r.critical_values = adf_critical_values(spec.deterministic, fit.n_obs);
  r.reject_unit_root = r.p_value < spec.significance;
  return r;
}

/// Highest order first (Dickey-Pantula): a unit root in the first difference
/// means I(2+) whatever the level test says, since the level test over-rejects
/// on I(2) data. Otherwise I(0) if the level rejects, else I(1).
constexpr Order decide_order(bool level_rejects, bool diff_rejects) {
  if (!diff_rejects) return Order::I2Plus;
  return level_rejects ? Order::I0 : Order::I1;
}

/// Level test with spec.deterministic, first-difference test with a
/// constant. Both stages are always run so they can be tabulated.
inline IntegrationOrder classify_integration(const Series& s, const AdfSpec& spec) {
  IntegrationOrder out;
  out.variable = s.name();
  out.level_result = adf_test(s, spec, Stage::Level);
  AdfSpec diff_spec = spec;
  diff_spec.deterministic = Deterministics::Constant;
  out.diff_result = adf_test(difference(s).renamed(s.name()), diff_spec, Stage::FirstDifference);
  out.order = decide_order(out.level_result.reject_unit_root, out.diff_result.reject_unit_root);
  return out;
}

}  // namespace coint
