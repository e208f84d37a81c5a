/*
 * Copyright 2026 The pgas-mc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "pgas/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "pgas/cli/io.hpp"

namespace pgas::cli {

namespace {
constexpr double kWidth = 640.0;
constexpr double kPanelHeight = 200.0;
constexpr double kMargin = 40.0;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
}  // namespace

void write_svg(const std::filesystem::path& path, const std::vector<Panel>& panels) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const double height = kPanelHeight * static_cast<double>(panels.size());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& panel = panels[p];
    const double top = kPanelHeight * static_cast<double>(p);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t len = 0;
    for (const auto& s : panel.series) {
      for (double v : s.values)
        if (std::isfinite(v)) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      len = std::max(len, s.values.size());
    }
    if (!(hi > lo)) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double x0 = kMargin;
    const double x1 = kWidth - 10.0;
    const double y0 = top + kPanelHeight - 25.0;
    const double y1 = top + 25.0;
    out << "<text x=\"" << x0 << "\" y=\"" << top + 16.0 << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << panel.title << "  [" << format_number(lo) << ", " << format_number(hi) << "]</text>\n";
    out << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
        << "\" fill=\"none\" stroke=\"#888\"/>\n";
    for (std::size_t si = 0; si < panel.series.size(); ++si) {
      const auto& s = panel.series[si];
      const std::size_t stride = std::max<std::size_t>(1, s.values.size() / 2000);
      out << "<polyline fill=\"none\" stroke-width=\"1\" stroke=\"" << kColors[si % 6] << "\" points=\"";
      for (std::size_t i = 0; i < s.values.size(); i += stride) {
        if (!std::isfinite(s.values[i])) continue;
        const double fx = len > 1 ? static_cast<double>(i) / static_cast<double>(len - 1) : 0.0;
        const double fy = (s.values[i] - lo) / (hi - lo);
        out << x0 + fx * (x1 - x0) << ',' << y0 + fy * (y1 - y0) << ' ';
      }
      out << "\"/>\n";
      out << "<text x=\"" << x1 - 150.0 << "\" y=\"" << y1 + 14.0 * static_cast<double>(si + 1)
          << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << kColors[si % 6] << "\">" << s.label
          << "</text>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace pgas::cli
