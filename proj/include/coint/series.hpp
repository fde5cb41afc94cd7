#pragma once

// Annual time series, aligned datasets and the regressor assembly shared by
// the unit-root, cointegration and VECM estimators.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coint/error.hpp"

namespace coint {

/// A named, gap-free annual series. Index i holds the value for start_year + i.
class Series {
 public:
  Series(std::string name, int start_year, std::vector<double> values)
      : name_(std::move(name)), start_year_(start_year), values_(std::move(values)) {
    if (values_.empty()) {
      throw detail::make_error(ErrorKind::TooShort, "series '" + name_ + "' has no observations");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw detail::year_error(ErrorKind::NonNumeric, year_at(i),
                                 "series '" + name_ + "' has a missing or non-finite value in " +
                                     std::to_string(year_at(i)));
      }
    }
  }

  const std::string& name() const noexcept { return name_; }
  int start_year() const noexcept { return start_year_; }
  int end_year() const noexcept { return start_year_ + static_cast<int>(values_.size()) - 1; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  int year_at(std::size_t i) const noexcept { return start_year_ + static_cast<int>(i); }

  Series renamed(std::string name) const { return Series(std::move(name), start_year_, values_); }

  /// Values for the inclusive year range [from, to]; the range must lie inside the series.
  Series slice(int from, int to) const {
    if (from < start_year_ || to > end_year() || from > to) {
      throw detail::make_error(ErrorKind::BadParameter, "slice " + std::to_string(from) + "-" +
                                                            std::to_string(to) + " outside series '" +
                                                            name_ + "'");
    }
    auto first = values_.begin() + (from - start_year_);
    return Series(name_, from, std::vector<double>(first, first + (to - from + 1)));
  }

  friend bool operator==(const Series&, const Series&) = default;

 private:
  std::string name_;
  int start_year_;
  std::vector<double> values_;
};

/// Series sharing one common year range, with unique names.
class Dataset {
 public:
  explicit Dataset(std::vector<Series> series) : series_(std::move(series)) {
    if (series_.empty()) {
      throw detail::make_error(ErrorKind::BadParameter, "dataset needs at least one series");
    }
    std::set<std::string> names;
    for (const auto& s : series_) {
      if (!names.insert(s.name()).second) {
        throw detail::make_error(ErrorKind::DuplicateName, "duplicate series name '" + s.name() + "'");
      }
      if (s.start_year() != series_.front().start_year() || s.size() != series_.front().size()) {
        throw detail::make_error(ErrorKind::DimensionMismatch,
                                 "series '" + s.name() + "' does not cover the dataset range; use align()");
      }
    }
  }

  std::size_t dimension() const noexcept { return series_.size(); }
  std::size_t length() const noexcept { return series_.front().size(); }
  int start_year() const noexcept { return series_.front().start_year(); }
  int end_year() const noexcept { return series_.front().end_year(); }
  const std::vector<Series>& series() const noexcept { return series_; }
  const Series& operator[](std::size_t i) const { return series_[i]; }

  const Series& at(std::string_view name) const {
    for (const auto& s : series_) {
      if (s.name() == name) return s;
    }
    throw detail::make_error(ErrorKind::UnknownVariable, "no series named '" + std::string(name) + "'");
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(series_.size());
    for (const auto& s : series_) out.push_back(s.name());
    return out;
  }

  /// Observations as a length × dimension matrix.
  Eigen::MatrixXd matrix() const {
    Eigen::MatrixXd m(length(), dimension());
    for (std::size_t j = 0; j < dimension(); ++j) {
      for (std::size_t i = 0; i < length(); ++i) m(i, j) = series_[j][i];
    }
    return m;
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<Series> series_;
};

enum class Deterministics { None, Constant, ConstantTrend };

constexpr std::string_view to_string(Deterministics d) {
  switch (d) {
    case Deterministics::None: return "none";
    case Deterministics::Constant: return "constant";
    case Deterministics::ConstantTrend: return "constant+trend";
  }
  return "none";
}

/// One regressor column: `variable` observed `lag` periods back (lag 0 = contemporaneous).
struct LagTerm {
  std::string variable;
  int lag = 0;
};

using LagSpec = std::vector<LagTerm>;

/// Every variable in `names` at lags from..to inclusive, grouped by lag.
inline LagSpec uniform_lags(const std::vector<std::string>& names, int from, int to) {
  LagSpec spec;
  for (int lag = from; lag <= to; ++lag) {
    for (const auto& n : names) spec.push_back({n, lag});
  }
  return spec;
}

inline std::string lag_label(const std::string& variable, int lag) {
  return lag == 0 ? variable : variable + "(-" + std::to_string(lag) + ")";
}

struct LagMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> labels;
  int first_year = 0;  ///< year of row 0
  int trim = 0;        ///< leading observations dropped

  std::size_t rows() const noexcept { return static_cast<std::size_t>(values.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(values.cols()); }
};

/// Natural log of every value; the result is named "l_<name>".
inline Series log_transform(const Series& s) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i] > 0.0)) {
      throw detail::year_error(ErrorKind::NonPositiveValue, s.year_at(i),
                               "series '" + s.name() + "' has non-positive value " + std::to_string(s[i]) +
                                   " in " + std::to_string(s.year_at(i)) + "; it cannot be logged");
    }
    out[i] = std::log(s[i]);
  }
  return Series("l_" + s.name(), s.start_year(), std::move(out));
}

/// `order`-fold first difference; the start year advances by `order`.
inline Series difference(const Series& s, int order = 1) {
  if (order < 1) throw detail::make_error(ErrorKind::BadParameter, "difference order must be positive");
  if (s.size() <= static_cast<std::size_t>(order)) {
    throw detail::make_error(ErrorKind::TooShort, "series '" + s.name() + "' of length " +
                                                      std::to_string(s.size()) + " cannot be differenced " +
                                                      std::to_string(order) + " times");
  }
  std::vector<double> v(s.values().begin(), s.values().end());
  for (int k = 0; k < order; ++k) {
    for (std::size_t i = v.size() - 1; i > 0; --i) v[i] -= v[i - 1];
    v.erase(v.begin());
  }
  return Series(s.name(), s.start_year() + order, std::move(v));
}

/// The series shifted `lag` years forward: value at year t is the input's value at t - lag.
inline Series lagged(const Series& s, int lag) {
  if (lag < 0 || s.size() <= static_cast<std::size_t>(lag)) {
    throw detail::make_error(ErrorKind::TooShort, "cannot lag '" + s.name() + "' by " + std::to_string(lag));
  }
  std::vector<double> v(s.values().begin(), s.values().end() - lag);
  return Series(s.name(), s.start_year() + lag, std::move(v));
}

/// Truncates every series to the common year range.
inline Dataset align(const std::vector<Series>& series) {
  if (series.empty()) throw detail::make_error(ErrorKind::EmptyIntersection, "no series to align");
  int from = series.front().start_year();
  int to = series.front().end_year();
  for (const auto& s : series) {
    from = std::max(from, s.start_year());
    to = std::min(to, s.end_year());
  }
  if (from > to) {
    throw detail::make_error(ErrorKind::EmptyIntersection, "series year ranges do not overlap");
  }
  std::vector<Series> out;
  out.reserve(series.size());
  for (const auto& s : series) out.push_back(s.slice(from, to));
  return Dataset(std::move(out));
}

inline Dataset align(const Dataset& d) { return align(d.series()); }

/// Assembles regressors for the observations that have every requested lag
/// available. `trim` (default: the largest lag) fixes the number of leading
/// observations dropped so samples can be held constant across lag choices.
/// Deterministic columns are appended last: "C" = 1 and "@TREND" = 1..T_eff.
inline LagMatrix lag_matrix(const Dataset& d, const LagSpec& spec, Deterministics det,
                            std::optional<int> trim = std::nullopt) {
  int max_lag = 0;
  for (const auto& term : spec) {
    if (term.lag < 0) throw detail::make_error(ErrorKind::BadParameter, "negative lag");
    max_lag = std::max(max_lag, term.lag);
  }
  const int t = trim.value_or(max_lag);
  if (t < max_lag) throw detail::make_error(ErrorKind::BadParameter, "trim smaller than the largest lag");
  if (static_cast<std::size_t>(t) >= d.length()) {
    throw detail::make_error(ErrorKind::TooShort, "lag " + std::to_string(t) + " leaves no observations from " +
                                                      std::to_string(d.length()));
  }
  const std::size_t rows = d.length() - static_cast<std::size_t>(t);
  const std::size_t n_det = det == Deterministics::None ? 0 : det == Deterministics::Constant ? 1 : 2;

  LagMatrix m;
  m.values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(spec.size() + n_det));
  m.first_year = d.start_year() + t;
  m.trim = t;
  for (std::size_t c = 0; c < spec.size(); ++c) {
    const Series& s = d.at(spec[c].variable);
    for (std::size_t r = 0; r < rows; ++r) {
      m.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          s[r + static_cast<std::size_t>(t - spec[c].lag)];
    }
    m.labels.push_back(lag_label(spec[c].variable, spec[c].lag));
  }
  if (n_det >= 1) {
    m.values.col(static_cast<Eigen::Index>(spec.size())).setOnes();
    m.labels.emplace_back("C");
  }
  if (n_det == 2) {
    auto col = m.values.col(static_cast<Eigen::Index>(spec.size() + 1));
    for (std::size_t r = 0; r < rows; ++r) col(static_cast<Eigen::Index>(r)) = static_cast<double>(r + 1);
    m.labels.emplace_back("@TREND");
  }
  return m;
}

}  // namespace coint
