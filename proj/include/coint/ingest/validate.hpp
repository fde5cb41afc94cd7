#pragma once

// Pre-flight checks on a dataset. Never throws; problems come back as a
// structured report.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "coint/series.hpp"

namespace coint::ingest {

enum class Severity { Warning, Error };

struct Issue {
  Severity severity = Severity::Warning;
  std::string code;  ///< SmallSample, TooShortForInference, NonPositiveValue
  std::string variable;
  std::optional<int> year;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const {
    return std::none_of(issues.begin(), issues.end(), [](const Issue& i) { return i.severity == Severity::Error; });
  }
  std::size_t count(Severity s) const {
    return static_cast<std::size_t>(
        std::count_if(issues.begin(), issues.end(), [s](const Issue& i) { return i.severity == s; }));
  }
};

inline constexpr std::size_t kMinimumLength = 12;
inline constexpr std::size_t kComfortableLength = 20;

/// Length floor and, for the variables in `log_variables`, strict positivity.
inline ValidationReport validate_dataset(const Dataset& d, const std::vector<std::string>& log_variables) {
  ValidationReport r;
  const std::size_t n = d.length();
  if (n < kMinimumLength) {
    r.issues.push_back({Severity::Error, "TooShortForInference", "", std::nullopt,
                        std::to_string(n) + " observations; at least " + std::to_string(kMinimumLength) +
                            " are needed for unit-root and cointegration tests"});
  } else if (n < kComfortableLength) {
    r.issues.push_back({Severity::Warning, "SmallSample", "", std::nullopt,
                        std::to_string(n) + " observations; asymptotic critical values are unreliable below " +
                            std::to_string(kComfortableLength)});
  }
  for (const auto& s : d.series()) {
    if (std::find(log_variables.begin(), log_variables.end(), s.name()) == log_variables.end()) continue;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] <= 0.0) {
        r.issues.push_back({Severity::Error, "NonPositiveValue", s.name(), s.year_at(i),
                            s.name() + " is " + std::to_string(s[i]) + " in " + std::to_string(s.year_at(i)) +
                                "; logarithms need positive values"});
      }
    }
  }
  return r;
}

inline ValidationReport validate_dataset(const Dataset& d, bool for_logs) {
  return validate_dataset(d, for_logs ? d.names() : std::vector<std::string>{});
}

}  // namespace coint::ingest
