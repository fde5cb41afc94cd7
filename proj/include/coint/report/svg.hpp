#pragma once

// Line chart of selected series against the year, as a standalone SVG
// document. Output depends only on the data, so identical inputs give
// identical bytes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "coint/error.hpp"
#include "coint/series.hpp"

namespace coint::report {

struct PlotOptions {
  std::string title;  ///< empty: "Graph of a, b and c"
  int width = 720;
  int height = 420;
};

namespace detail {

inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += i + 1 == names.size() ? " and " : ", ";
    out += names[i];
  }
  return out;
}

/// Step of 1, 2 or 5 times a power of ten giving about `target` intervals.
inline double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

inline std::string tick_label(double v, double step) {
  const int decimals = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step) - 1e-9));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, std::abs(v) < step * 1e-9 ? 0.0 : v);
  return buf;
}

}  // namespace detail

inline std::string plot_trends(const Dataset& d, const std::vector<std::string>& variables, const PlotOptions& opt = {}) {
  std::vector<const Series*> series;
  for (const auto& name : variables) series.push_back(&d.at(name));  // UnknownVariable
  if (series.empty()) throw coint::detail::make_error(ErrorKind::BadParameter, "nothing to plot");

  const double left = 70, right = 20, top = 40, bottom = 60;
  const double pw = opt.width - left - right, ph = opt.height - top - bottom;

  double lo = series.front()->values()[0], hi = lo;
  for (const auto* s : series)
    for (double v : s->values()) lo = std::min(lo, v), hi = std::max(hi, v);
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    const double pad = std::max(1.0, std::abs(hi) * 0.1);
    lo -= pad;
    hi += pad;
  }
  const double ystep = detail::nice_step(hi - lo, 5);
  const double ylo = std::floor(lo / ystep) * ystep, yhi = std::ceil(hi / ystep) * ystep;

  const int y0 = d.start_year(), y1 = d.end_year();
  const double xspan = std::max(1, y1 - y0);
  auto px = [&](int year) { return y0 == y1 ? left + pw / 2 : left + pw * (year - y0) / xspan; };
  auto py = [&](double v) { return top + ph * (yhi - v) / (yhi - ylo); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) + "\" height=\"" +
         std::to_string(opt.height) + "\" viewBox=\"0 0 " + std::to_string(opt.width) + " " + std::to_string(opt.height) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const std::string title = opt.title.empty() ? "Graph of " + detail::join_names(variables) : opt.title;
  out += "<text x=\"" + detail::num(opt.width / 2.0) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         detail::xml_escape(title) + "</text>\n";

  // grid and y axis labels
  out += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  const int ny = static_cast<int>(std::lround((yhi - ylo) / ystep));
  for (int i = 0; i <= ny; ++i) {
    const double y = py(ylo + i * ystep);
    out += "<line x1=\"" + detail::num(left) + "\" y1=\"" + detail::num(y) + "\" x2=\"" + detail::num(left + pw) +
           "\" y2=\"" + detail::num(y) + "\"/>\n";
  }
  out += "</g>\n<g text-anchor=\"end\">\n";
  for (int i = 0; i <= ny; ++i) {
    const double v = ylo + i * ystep;
    out += "<text x=\"" + detail::num(left - 6) + "\" y=\"" + detail::num(py(v) + 4) + "\">" + detail::tick_label(v, ystep) +
           "</text>\n";
  }
  out += "</g>\n<g text-anchor=\"middle\">\n";
  const int xstep = std::max(1, static_cast<int>(std::ceil((y1 - y0) / 12.0)));
  for (int year = y0; year <= y1; year += xstep) {
    out += "<text x=\"" + detail::num(px(year)) + "\" y=\"" + detail::num(top + ph + 18) + "\">" + std::to_string(year) +
           "</text>\n";
  }
  out += "</g>\n";
  out += "<rect x=\"" + detail::num(left) + "\" y=\"" + detail::num(top) + "\" width=\"" + detail::num(pw) + "\" height=\"" +
         detail::num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto* s = series[k];
    const std::string colour = detail::kPalette[k % std::size(detail::kPalette)];
    if (s->size() == 1) {
      out += "<circle cx=\"" + detail::num(px(s->start_year())) + "\" cy=\"" + detail::num(py((*s)[0])) +
             "\" r=\"4\" fill=\"" + colour + "\"/>\n";
    } else {
      out += "<polyline fill=\"none\" stroke=\"" + colour + "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < s->size(); ++i) {
        out += (i ? " " : "") + detail::num(px(s->year_at(i))) + "," + detail::num(py((*s)[i]));
      }
      out += "\"/>\n";
    }
    const double ly = opt.height - 18.0, lx = left + 150.0 * static_cast<double>(k);
    out += "<line x1=\"" + detail::num(lx) + "\" y1=\"" + detail::num(ly - 4) + "\" x2=\"" + detail::num(lx + 24) +
           "\" y2=\"" + detail::num(ly - 4) + "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + detail::num(lx + 30) + "\" y=\"" + detail::num(ly) + "\">" + detail::xml_escape(s->name()) +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace coint::report
