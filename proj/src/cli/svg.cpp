// Copyright 2026 The weakmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "weakmeas/cli/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace weakmeas::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 56.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 32.0;
constexpr double kMarginBottom = 40.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

void write_histogram_svg(const std::filesystem::path& path, double lo,
                         double hi, const std::vector<SvgSeries>& series,
                         const std::string& title) {
  double peak = 0.0;
  for (const auto& s : series) {
    for (double v : s.values) peak = std::max(peak, v);
  }
  if (peak <= 0.0) peak = 1.0;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto x_of = [&](double frac) { return kMarginLeft + frac * plot_w; };
  auto y_of = [&](double v) {
    return kMarginTop + plot_h * (1.0 - v / (1.08 * peak));
  };

  const std::filesystem::path tmp = path.string() + ".tmp";
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write '" + tmp.string() + "'");
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">"
      << title << "</text>\n";

  // bars first, overlay lines after
  for (const auto& s : series) {
    if (s.as_line || s.values.empty()) continue;
    const double bw = plot_w / static_cast<double>(s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      const double v = s.values[i];
      if (v <= 0.0) continue;
      const double x = kMarginLeft + bw * static_cast<double>(i);
      const double y = y_of(v);
      out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\""
          << num(bw) << "\" height=\"" << num(kMarginTop + plot_h - y)
          << "\" fill=\"" << s.color << "\" fill-opacity=\"0.55\"/>\n";
    }
  }
  for (const auto& s : series) {
    if (!s.as_line || s.values.size() < 2) continue;
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.5\" points=\"";
    const double step = 1.0 / static_cast<double>(s.values.size() - 1);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      out << num(x_of(step * static_cast<double>(i))) << ","
          << num(y_of(std::max(0.0, s.values[i]))) << " ";
    }
    out << "\"/>\n";
  }

  // frame and x labels
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop
      << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double frac = static_cast<double>(i) / 4.0;
    const double value = lo + frac * (hi - lo);
    out << "<text x=\"" << num(x_of(frac)) << "\" y=\""
        << kHeight - kMarginBottom + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << num(value) << "</text>\n";
  }

  // legend
  double legend_y = kMarginTop + 14.0;
  for (const auto& s : series) {
    if (s.label.empty()) continue;
    out << "<rect x=\"" << kMarginLeft + 8 << "\" y=\"" << num(legend_y - 9)
        << "\" width=\"12\" height=\"12\" fill=\"" << s.color << "\"/>\n";
    out << "<text x=\"" << kMarginLeft + 26 << "\" y=\"" << num(legend_y + 1)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label
        << "</text>\n";
    legend_y += 16.0;
  }
  out << "</svg>\n";
  out.close();
  std::filesystem::rename(tmp, path);
}

}  // namespace weakmeas::cli
