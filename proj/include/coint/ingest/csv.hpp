#pragma once

// CSV input and output for annual series.
//
//   long:  year,<name>          one series per file
//   wide:  year,<name1>,<name2>,...
//
// A header row is required. Years must be consecutive and strictly
// increasing. Values are written with the shortest representation that
// parses back to the same double, so write -> read is bit-exact.

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <vector>

#include "coint/error.hpp"
#include "coint/series.hpp"

namespace coint::ingest {

enum class CsvMode { Long, Wide };

struct CsvLayout {
  CsvMode mode = CsvMode::Wide;
  char delimiter = ',';
  std::string name;  ///< long mode: overrides the value column's header as the series name
};

namespace detail {

using coint::detail::location_error;
using coint::detail::make_error;
using coint::detail::year_error;

/// Splits one record; double-quoted fields may contain the delimiter and "" escapes.
inline std::vector<std::string> split_record(std::string_view line, char delim, int line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"' && fields.back().empty()) {
      quoted = true;
    } else if (ch == delim) {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  if (quoted) throw location_error(ErrorKind::ParseError, line_no, static_cast<int>(fields.size()), "unterminated quote");
  return fields;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

inline bool parse_year(std::string_view s, int& out) {
  s = trim(s);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

/// Parses CSV text. `source` names the input in error messages.
inline Dataset parse_csv(std::string_view text, const CsvLayout& layout, const std::string& source = "<csv>") {
  using namespace detail;
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<std::pair<int, std::string_view>> lines;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    lines.emplace_back(line_no, line);
  }
  if (lines.empty()) throw make_error(ErrorKind::ParseError, source + ": empty file, header row required");

  std::vector<std::string> header = split_record(lines[0].second, layout.delimiter, lines[0].first);
  for (auto& h : header) h = std::string(trim(h));
  if (header.size() < 2) {
    throw location_error(ErrorKind::ParseError, lines[0].first, 1, source + ": header needs a year column and at least one value column");
  }
  if (layout.mode == CsvMode::Long) {
    if (header.size() != 2) {
      throw location_error(ErrorKind::ParseError, lines[0].first, 3, source + ": long layout has exactly two columns (year,value)");
    }
    if (!layout.name.empty()) header[1] = layout.name;
  }
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c].empty()) {
      throw location_error(ErrorKind::ParseError, lines[0].first, static_cast<int>(c + 1), source + ": empty column name");
    }
  }
  if (lines.size() < 2) throw make_error(ErrorKind::NoData, source + ": no data rows");

  const std::size_t n_cols = header.size() - 1;
  std::vector<std::vector<double>> values(n_cols);
  int first_year = 0, prev_year = 0;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto [ln, text_line] = lines[r];
    const auto fields = split_record(text_line, layout.delimiter, ln);
    if (fields.size() != header.size()) {
      throw location_error(ErrorKind::ParseError, ln, static_cast<int>(std::min(fields.size(), header.size()) + 1),
                           source + ": line " + std::to_string(ln) + " has " + std::to_string(fields.size()) +
                               " fields, header has " + std::to_string(header.size()));
    }
    int year = 0;
    if (!parse_year(fields[0], year)) {
      throw location_error(ErrorKind::ParseError, ln, 1, source + ": line " + std::to_string(ln) + ": bad year '" + fields[0] + "'");
    }
    if (r == 1) {
      first_year = year;
    } else if (year <= prev_year) {
      throw location_error(ErrorKind::ParseError, ln, 1, source + ": line " + std::to_string(ln) + ": year " +
                                                             std::to_string(year) + " is not after " + std::to_string(prev_year));
    } else if (year != prev_year + 1) {
      Error e = year_error(ErrorKind::GapInYears, prev_year + 1,
                           source + ": year " + std::to_string(prev_year + 1) + " is missing (line " + std::to_string(ln) + ")");
      e.line = ln;
      throw e;
    }
    prev_year = year;
    for (std::size_t c = 0; c < n_cols; ++c) {
      double v = 0.0;
      if (!parse_double(fields[c + 1], v)) {
        Error e = location_error(ErrorKind::NonNumeric, ln, static_cast<int>(c + 2),
                                 source + ": line " + std::to_string(ln) + ", column '" + header[c + 1] + "': '" +
                                     std::string(trim(fields[c + 1])) + "' is not a number");
        e.year = year;
        throw e;
      }
      values[c].push_back(v);
    }
  }

  std::vector<Series> out;
  for (std::size_t c = 0; c < n_cols; ++c) out.emplace_back(header[c + 1], first_year, std::move(values[c]));
  return Dataset(std::move(out));
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw coint::detail::make_error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Dataset read_csv(const std::filesystem::path& path, const CsvLayout& layout = {}) {
  return parse_csv(read_text_file(path), layout, path.string());
}

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline std::string quote_field(const std::string& s, char delim) {
  if (s.find_first_of(std::string{delim, '"', '\n', '\r'}) == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

/// Wide layout; a one-series dataset is also valid long layout.
inline std::string to_csv(const Dataset& d, char delim = ',') {
  std::string out = "year";
  for (const auto& s : d.series()) out += delim + quote_field(s.name(), delim);
  out += '\n';
  for (std::size_t t = 0; t < d.length(); ++t) {
    out += std::to_string(d.start_year() + static_cast<int>(t));
    for (const auto& s : d.series()) out += delim + format_double(s[t]);
    out += '\n';
  }
  return out;
}

/// Writes to a temporary sibling and renames it into place, so readers never
/// see a partial file.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  static std::atomic<unsigned> counter{0};
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(counter.fetch_add(1)) + "-" +
         std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw coint::detail::make_error(ErrorKind::IoError, "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw coint::detail::make_error(ErrorKind::IoError, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw coint::detail::make_error(ErrorKind::IoError, "cannot move file into '" + path.string() + "'");
  }
}

inline void write_csv(const Dataset& d, const std::filesystem::path& path, char delim = ',') {
  write_file_atomic(path, to_csv(d, delim));
}

}  // namespace coint::ingest
