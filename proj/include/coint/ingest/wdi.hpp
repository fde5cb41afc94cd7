#pragma once

// World Bank Indicators API (v2) client. The HTTP layer is injected so tests
// can replay recorded responses; wdi_http.hpp provides the real transport.
//
// GET {base}/v2/country/{iso3}/indicator/{code}?format=json&per_page=1000&date={start}:{end}&page={p}
//
// Response: [ {page, pages, per_page, total, ...}, [ {date, value, ...}, ... ] ]
// or, on bad input, [ {message: [{id, key, value}]} ].

#include <algorithm>
#include <chrono>
#include <ctime>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coint/error.hpp"
#include "coint/ingest/cache.hpp"
#include "coint/series.hpp"

namespace coint::ingest {

inline constexpr const char* kWdiBaseUrl = "https://api.worldbank.org";

struct WdiQuery {
  std::string country_iso3;
  std::string indicator_code;
  int start_year = 0;
  int end_year = 0;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

/// (base_url, path-and-query) -> response. Throws Error(HttpError) on
/// connection failure.
using Transport = std::function<HttpResponse(const std::string& base_url, const std::string& target)>;

struct WdiPage {
  int page = 1;
  int pages = 1;
  std::vector<std::pair<int, std::optional<double>>> observations;  ///< (year, value or null)
};

struct FetchOptions {
  Transport transport;                ///< required unless every query hits the cache
  std::string base_url = kWdiBaseUrl;
  const Cache* cache = nullptr;
  std::string series_name;            ///< default: the indicator code
  bool offline = false;               ///< cache only; never call the transport
};

inline void validate(const WdiQuery& q) {
  if (q.country_iso3.empty() || q.indicator_code.empty()) {
    throw coint::detail::make_error(ErrorKind::ConfigError, "WDI query needs a country and an indicator code");
  }
  if (q.start_year > q.end_year) {
    throw coint::detail::make_error(ErrorKind::ConfigError, "WDI year range " + std::to_string(q.start_year) + ":" +
                                                                std::to_string(q.end_year) + " is reversed");
  }
}

inline std::string wdi_target(const WdiQuery& q, int page = 1) {
  return "/v2/country/" + q.country_iso3 + "/indicator/" + q.indicator_code +
         "?format=json&per_page=1000&date=" + std::to_string(q.start_year) + ":" + std::to_string(q.end_year) +
         "&page=" + std::to_string(page);
}

namespace detail {

inline int as_int(const nlohmann::json& v, const char* field) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    try {
      return std::stoi(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw coint::detail::make_error(ErrorKind::SchemaError, std::string("WDI field '") + field + "' is not an integer");
}

inline std::string utc_now_iso8601() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

inline WdiPage parse_wdi_page(const std::string& body) {
  using coint::detail::make_error;
  const auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded()) throw make_error(ErrorKind::SchemaError, "WDI response is not JSON");
  if (!doc.is_array() || doc.empty() || !doc[0].is_object()) {
    throw make_error(ErrorKind::SchemaError, "WDI response is not a [metadata, observations] array");
  }
  const auto& meta = doc[0];
  if (meta.contains("message")) {
    std::string text;
    for (const auto& m : meta["message"]) {
      if (!text.empty()) text += "; ";
      text += m.value("key", std::string{}) + ": " + m.value("value", std::string{});
    }
    throw make_error(ErrorKind::SchemaError, "WDI API error: " + text);
  }
  WdiPage out;
  out.page = meta.contains("page") ? detail::as_int(meta["page"], "page") : 1;
  out.pages = meta.contains("pages") ? detail::as_int(meta["pages"], "pages") : 1;
  if (doc.size() < 2 || doc[1].is_null()) return out;
  if (!doc[1].is_array()) throw make_error(ErrorKind::SchemaError, "WDI observations are not an array");
  for (const auto& obs : doc[1]) {
    if (!obs.is_object() || !obs.contains("date")) throw make_error(ErrorKind::SchemaError, "WDI observation lacks 'date'");
    const int year = detail::as_int(obs["date"], "date");
    std::optional<double> value;
    if (obs.contains("value") && !obs["value"].is_null()) {
      if (!obs["value"].is_number()) throw make_error(ErrorKind::SchemaError, "WDI value is not numeric");
      value = obs["value"].get<double>();
    }
    out.observations.emplace_back(year, value);
  }
  return out;
}

/// Assembles the observations of all pages into a Series over the query range.
inline Series assemble_wdi_series(const WdiQuery& q, std::vector<std::pair<int, std::optional<double>>> obs,
                                  const std::string& name) {
  using coint::detail::make_error;
  if (obs.empty()) {
    throw make_error(ErrorKind::NoData, "WDI returned no observations for " + q.country_iso3 + "/" + q.indicator_code);
  }
  std::map<int, std::optional<double>> by_year;
  for (const auto& [year, v] : obs) {
    if (year >= q.start_year && year <= q.end_year) by_year[year] = v;
  }
  std::string nulls;
  int first_null = 0;
  for (const auto& [year, v] : by_year) {
    if (!v) {
      if (nulls.empty()) first_null = year;
      nulls += (nulls.empty() ? "" : ", ") + std::to_string(year);
    }
  }
  if (!nulls.empty()) {
    throw coint::detail::year_error(ErrorKind::NullObservations, first_null,
                                    q.indicator_code + " for " + q.country_iso3 + " has null values in " + nulls);
  }
  std::vector<double> values;
  for (int year = q.start_year; year <= q.end_year; ++year) {
    auto it = by_year.find(year);
    if (it == by_year.end()) {
      throw coint::detail::year_error(ErrorKind::GapInYears, year,
                                      q.indicator_code + " for " + q.country_iso3 + " has no observation for " +
                                          std::to_string(year));
    }
    values.push_back(*it->second);
  }
  return Series(name, q.start_year, std::move(values));
}

/// Fetches one indicator, following pagination. A warm cache answers without
/// calling the transport; a successful fetch is written back to the cache.
inline Series fetch_wdi(const WdiQuery& q, const FetchOptions& opts) {
  validate(q);
  const std::string name = opts.series_name.empty() ? q.indicator_code : opts.series_name;
  const CacheKey key{"wdi", q.country_iso3, q.indicator_code, q.start_year, q.end_year};

  std::unique_lock<std::mutex> guard;
  if (opts.cache) {
    guard = Cache::lock(key);
    if (auto hit = opts.cache->get(key)) return hit->payload.renamed(name);
  }
  if (opts.offline) {
    throw coint::detail::make_error(ErrorKind::HttpError, "offline and no cached copy of " + key.id());
  }
  if (!opts.transport) throw coint::detail::make_error(ErrorKind::HttpError, "no HTTP transport configured");

  std::vector<std::pair<int, std::optional<double>>> obs;
  int pages = 1;
  for (int page = 1; page <= pages; ++page) {
    const HttpResponse resp = opts.transport(opts.base_url, wdi_target(q, page));
    if (resp.status != 200) {
      Error e(ErrorKind::HttpError, "GET " + opts.base_url + wdi_target(q, page) + " returned HTTP " +
                                        std::to_string(resp.status));
      e.status = resp.status;
      throw e;
    }
    WdiPage p = parse_wdi_page(resp.body);
    pages = std::max(1, p.pages);
    obs.insert(obs.end(), p.observations.begin(), p.observations.end());
  }
  Series s = assemble_wdi_series(q, std::move(obs), name);
  if (opts.cache) opts.cache->put({key, s, detail::utc_now_iso8601()});
  return s;
}

}  // namespace coint::ingest
