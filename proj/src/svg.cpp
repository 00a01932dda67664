/* Copyright 2026 The superq Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "superq/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "superq/errors.hpp"

namespace superq::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 6> kColors = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (lo == hi) lo -= 0.5, hi += 0.5;
  }
  double map(double v, double a, double b) const {
    return a + (v - lo) / (hi - lo) * (b - a);
  }
};

void frame(std::ostringstream& os, const std::string& title,
           const std::string& xl, const std::string& yl, const Range& xr,
           const Range& yr, bool log_y) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
     << "font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
     << "font-size=\"14\">" << escape(title) << "</text>\n"
     << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
     << kWidth - kLeft - kRight << "\" height=\""
     << kHeight - kTop - kBottom
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  const double y0 = kHeight - kBottom;
  for (int i = 0; i <= 4; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double px = xr.map(fx, kLeft, kWidth - kRight);
    os << "<text x=\"" << px << "\" y=\"" << y0 + 16
       << "\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    const double py = yr.map(fy, y0, kTop);
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << py + 4
       << "\" text-anchor=\"end\">" << num(log_y ? std::pow(10.0, fy) : fy)
       << "</text>\n";
  }
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\">" << escape(xl) << "</text>\n"
     << "<text x=\"16\" y=\"" << kHeight / 2
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << kHeight / 2 << ")\">" << escape(yl) << "</text>\n";
}

void save(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string());
  out << body;
}

}  // namespace

void write_line_plot(const std::filesystem::path& path, const LinePlot& plot) {
  auto ty = [&](double v) {
    if (!plot.log_y) return v;
    return v > 0.0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN();
  };
  Range xr, yr;
  for (const Series& s : plot.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(ty(s.y[i]))) continue;
      xr.add(s.x[i]);
      yr.add(ty(s.y[i]));
    }
  }
  xr.settle();
  yr.settle();
  std::ostringstream os;
  frame(os, plot.title, plot.x_label, plot.y_label, xr, yr, plot.log_y);
  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const Series& s = plot.series[k];
    const char* color = kColors[k % kColors.size()];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      const double y = ty(s.y[i]);
      if (!std::isfinite(y) || !std::isfinite(s.x[i])) continue;
      os << num(xr.map(s.x[i], kLeft, kWidth - kRight)) << ','
         << num(yr.map(y, kHeight - kBottom, kTop)) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << kWidth - kRight - 6 << "\" y=\"" << kTop + 16 + 14 * k
       << "\" text-anchor=\"end\" fill=\"" << color << "\">"
       << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  save(path, os.str());
}

void write_heatmap(const std::filesystem::path& path, const Heatmap& map) {
  if (map.values.size() != map.x.size() * map.y.size()) {
    throw DimensionMismatch("heatmap values do not match the axes");
  }
  Range xr, yr, vr;
  for (double v : map.x) xr.add(v);
  for (double v : map.y) yr.add(v);
  for (double v : map.values) vr.add(v);
  xr.settle();
  yr.settle();
  vr.settle();
  std::ostringstream os;
  frame(os, map.title, map.x_label, map.y_label, xr, yr, false);
  const double cw = (kWidth - kLeft - kRight) / std::max<std::size_t>(map.x.size(), 1);
  const double ch = (kHeight - kTop - kBottom) / std::max<std::size_t>(map.y.size(), 1);
  for (std::size_t r = 0; r < map.y.size(); ++r) {
    for (std::size_t c = 0; c < map.x.size(); ++c) {
      const double v = map.values[r * map.x.size() + c];
      std::string fill = "#bbbbbb";
      if (std::isfinite(v)) {
        const double f = std::clamp(vr.map(v, 0.0, 1.0), 0.0, 1.0);
        char buf[16];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                      static_cast<int>(255 * f), static_cast<int>(80 * f),
                      static_cast<int>(255 * (1.0 - f)));
        fill = buf;
      }
      os << "<rect x=\"" << num(kLeft + c * cw) << "\" y=\""
         << num(kHeight - kBottom - (r + 1) * ch) << "\" width=\""
         << num(cw + 0.5) << "\" height=\"" << num(ch + 0.5) << "\" fill=\""
         << fill << "\"/>\n";
    }
  }
  os << "<text x=\"" << kWidth - kRight << "\" y=\"" << kTop - 6
     << "\" text-anchor=\"end\">range " << num(vr.lo) << " .. " << num(vr.hi)
     << "</text>\n</svg>\n";
  save(path, os.str());
}

}  // namespace superq::svg
