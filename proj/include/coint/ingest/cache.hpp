#pragma once

// On-disk cache of fetched series:
//
//   <cache_dir>/<source>/<country>/<indicator>/<start>-<end>.csv
//   <cache_dir>/<source>/<country>/<indicator>/<start>-<end>.meta.json
//
// The CSV holds the payload in long layout, the sidecar the key and fetch
// time. Files are replaced atomically. Access to one key is serialized
// through a process-wide mutex per key; distinct keys proceed concurrently.

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "coint/error.hpp"
#include "coint/ingest/csv.hpp"
#include "coint/series.hpp"

namespace coint::ingest {

inline constexpr const char* kCacheDirEnv = "COINT_CACHE_DIR";

struct CacheKey {
  std::string source;  ///< e.g. "wdi"
  std::string country;
  std::string indicator;
  int start_year = 0;
  int end_year = 0;

  std::string id() const {
    return source + "/" + country + "/" + indicator + "/" + std::to_string(start_year) + "-" + std::to_string(end_year);
  }
  auto operator<=>(const CacheKey&) const = default;
};

struct CacheEntry {
  CacheKey key;
  Series payload;
  std::string fetched_at;  ///< ISO 8601, UTC
};

/// Cache directory: the environment override if set, else `fallback`, else
/// ".coint-cache" in the working directory.
inline std::filesystem::path resolve_cache_dir(const std::optional<std::string>& fallback = std::nullopt) {
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
  if (fallback && !fallback->empty()) return *fallback;
  return ".coint-cache";
}

class Cache {
 public:
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path csv_path(const CacheKey& k) const { return base(k).concat(".csv"); }
  std::filesystem::path meta_path(const CacheKey& k) const { return base(k).concat(".meta.json"); }

  /// Held while checking, fetching and storing one key.
  static std::unique_lock<std::mutex> lock(const CacheKey& k) {
    static std::mutex registry_mutex;
    static std::map<std::string, std::unique_ptr<std::mutex>> registry;
    std::mutex* m = nullptr;
    {
      std::lock_guard guard(registry_mutex);
      auto& slot = registry[k.id()];
      if (!slot) slot = std::make_unique<std::mutex>();
      m = slot.get();
    }
    return std::unique_lock(*m);
  }

  std::optional<CacheEntry> get(const CacheKey& k) const {
    const auto csv = csv_path(k);
    const auto meta = meta_path(k);
    if (!std::filesystem::exists(csv) || !std::filesystem::exists(meta)) return std::nullopt;
    const auto info = nlohmann::json::parse(read_text_file(meta), nullptr, false);
    if (info.is_discarded() || !info.is_object()) {
      throw coint::detail::make_error(ErrorKind::SchemaError, "corrupt cache metadata '" + meta.string() + "'");
    }
    const Dataset d = read_csv(csv, {CsvMode::Long, ',', {}});
    return CacheEntry{k, d[0], info.value("fetched_at", std::string{})};
  }

  void put(const CacheEntry& e) const {
    write_csv(Dataset({e.payload}), csv_path(e.key));
    const nlohmann::json meta = {{"source", e.key.source},       {"country", e.key.country},
                                 {"indicator", e.key.indicator}, {"start_year", e.key.start_year},
                                 {"end_year", e.key.end_year},   {"series", e.payload.name()},
                                 {"fetched_at", e.fetched_at}};
    write_file_atomic(meta_path(e.key), meta.dump(2) + "\n");
  }

 private:
  std::filesystem::path base(const CacheKey& k) const {
    return dir_ / sanitize(k.source) / sanitize(k.country) / sanitize(k.indicator) /
           (std::to_string(k.start_year) + "-" + std::to_string(k.end_year));
  }

  static std::string sanitize(const std::string& part) {
    std::string out;
    for (char ch : part) {
      const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '_' || ch == '-';
      out += ok ? ch : '_';
    }
    if (out.empty() || out == "." || out == "..") out = "_" + out;
    return out;
  }

  std::filesystem::path dir_;
};

}  // namespace coint::ingest
