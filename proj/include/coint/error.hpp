#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coint {

enum class ErrorKind {
  // core-series
  NonPositiveValue,
  TooShort,
  EmptyIntersection,
  DuplicateName,
  UnknownVariable,
  // linreg / numerics
  RankDeficient,
  Underdetermined,
  NotPositiveDefinite,
  DimensionMismatch,
  // inference
  UnsupportedCase,
  UnsupportedDimension,
  InvalidRank,
  BadParameter,
  // ingest
  ParseError,
  GapInYears,
  NonNumeric,
  HttpError,
  SchemaError,
  NullObservations,
  NoData,
  IoError,
  // orchestration
  ConfigError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveValue: return "NonPositiveValue";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::EmptyIntersection: return "EmptyIntersection";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::Underdetermined: return "Underdetermined";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnsupportedCase: return "UnsupportedCase";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::GapInYears: return "GapInYears";
    case ErrorKind::NonNumeric: return "NonNumeric";
    case ErrorKind::HttpError: return "HttpError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::NullObservations: return "NullObservations";
    case ErrorKind::NoData: return "NoData";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Coarse grouping used by the CLI to pick an exit code.
enum class ErrorCategory { Usage, Data, Numerical };

constexpr ErrorCategory category_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RankDeficient:
    case ErrorKind::Underdetermined:
    case ErrorKind::NotPositiveDefinite:
      return ErrorCategory::Numerical;
    case ErrorKind::ConfigError:
    case ErrorKind::BadParameter:
    case ErrorKind::UnsupportedCase:
    case ErrorKind::UnsupportedDimension:
    case ErrorKind::InvalidRank:
    case ErrorKind::DimensionMismatch:
      return ErrorCategory::Usage;
    default:
      return ErrorCategory::Data;
  }
}

/// Every failure raised by the library. `year`, `line`, `column` and `status`
/// carry the location payload of the variants that have one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }

  std::optional<int> year;
  std::optional<int> line;
  std::optional<int> column;
  std::optional<int> status;

 private:
  ErrorKind kind_;
};

namespace detail {

inline Error make_error(ErrorKind kind, const std::string& message) { return Error(kind, message); }

inline Error year_error(ErrorKind kind, int year, const std::string& message) {
  Error e(kind, message);
  e.year = year;
  return e;
}

inline Error location_error(ErrorKind kind, int line, int column, const std::string& message) {
  Error e(kind, message);
  e.line = line;
  e.column = column;
  return e;
}

}  // namespace detail
}  // namespace coint
