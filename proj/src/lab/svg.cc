// Copyright 2026 The mlplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mlplab/lab/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace mlplab::lab {
namespace {

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                                  "#bcbd22", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  if (v != 0 && (std::abs(v) < 1e-2 || std::abs(v) >= 1e4)) {
    std::snprintf(buf, sizeof(buf), "%.0e", v);
  } else {
    std::snprintf(buf, sizeof(buf), "%.3g", v);
  }
  return buf;
}

std::string escape(const std::string& s) {
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

std::string header(int w, int h) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(w) + "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " +
         std::to_string(w) + " " + std::to_string(h) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string text(double x, double y, const std::string& s, const char* anchor = "middle",
                 const std::string& extra = "") {
  return "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" text-anchor=\"" + anchor + "\"" + extra +
         ">" + escape(s) + "</text>\n";
}

// Evenly spaced "nice" ticks covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 5) {
  const double span = hi - lo;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    step = m * mag;
    if (span / step <= target) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step - 1e-9) * step; t <= hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

}  // namespace

std::string render_line_chart(const ChartSpec& spec, const std::vector<Series>& series) {
  const double left = 70, right = 150, top = 40, bottom = 55;
  const double pw = spec.width - left - right;
  const double ph = spec.height - top - bottom;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  auto tx = [&](double x) { return spec.log_x ? std::log10(x) : x; };
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.mean[i])) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      const double sd = i < s.std.size() && std::isfinite(s.std[i]) ? s.std[i] : 0.0;
      ymin = std::min(ymin, s.mean[i] - sd);
      ymax = std::max(ymax, s.mean[i] + sd);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (spec.y_min) ymin = *spec.y_min;
  if (spec.y_max) ymax = *spec.y_max;
  if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
  if (ymax == ymin) ymin -= 0.5, ymax += 0.5;

  auto px = [&](double x) { return left + (tx(x) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) {
    return top + (1.0 - (std::clamp(y, ymin, ymax) - ymin) / (ymax - ymin)) * ph;
  };

  std::string svg = header(spec.width, spec.height);
  svg += text(spec.width / 2.0, 22, spec.title, "middle", " font-size=\"15\"");
  svg += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(pw) + "\" height=\"" +
         fmt(ph) + "\" fill=\"none\" stroke=\"#333\"/>\n";

  for (double t : nice_ticks(ymin, ymax)) {
    const double y = py(t);
    svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(left + pw) +
           "\" y2=\"" + fmt(y) + "\" stroke=\"#ddd\"/>\n";
    svg += text(left - 6, y + 4, tick_label(t), "end");
  }
  std::vector<double> xticks;
  if (spec.log_x) {
    for (double e = std::floor(xmin); e <= std::ceil(xmax); e += 1) {
      if (e >= xmin - 1e-9 && e <= xmax + 1e-9) xticks.push_back(std::pow(10.0, e));
    }
  } else {
    xticks = nice_ticks(xmin, xmax);
  }
  for (double t : xticks) {
    const double x = px(t);
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(top) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
           fmt(top + ph) + "\" stroke=\"#eee\"/>\n";
    svg += text(x, top + ph + 16, tick_label(t));
  }
  svg += text(left + pw / 2, spec.height - 14, spec.x_label);
  svg += text(18, top + ph / 2, spec.y_label, "middle",
              " transform=\"rotate(-90 18 " + fmt(top + ph / 2) + ")\"");

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % kPalette.size()];
    // Missing points (NaN) split the series into separate runs.
    std::vector<std::vector<std::size_t>> runs(1);
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isfinite(s.x[i]) && std::isfinite(s.mean[i])) {
        runs.back().push_back(i);
      } else if (!runs.back().empty()) {
        runs.emplace_back();
      }
    }
    auto sd = [&](std::size_t i) {
      return i < s.std.size() && std::isfinite(s.std[i]) ? s.std[i] : 0.0;
    };
    for (const auto& run : runs) {
      if (run.empty()) continue;
      if (!s.std.empty()) {
        std::string band;
        for (std::size_t i : run) band += fmt(px(s.x[i])) + "," + fmt(py(s.mean[i] + sd(i))) + " ";
        for (auto it = run.rbegin(); it != run.rend(); ++it) {
          band += fmt(px(s.x[*it])) + "," + fmt(py(s.mean[*it] - sd(*it))) + " ";
        }
        svg += "<polygon points=\"" + band + "\" fill=\"" + color +
               "\" fill-opacity=\"0.18\" stroke=\"none\"/>\n";
      }
      std::string line;
      for (std::size_t i : run) line += fmt(px(s.x[i])) + "," + fmt(py(s.mean[i])) + " ";
      svg += "<polyline points=\"" + line + "\" fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"1.8\"/>\n";
      for (std::size_t i : run) {
        svg += "<circle cx=\"" + fmt(px(s.x[i])) + "\" cy=\"" + fmt(py(s.mean[i])) +
               "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
      }
    }
    const double ly = top + 14 + 18.0 * static_cast<double>(k);
    svg += "<line x1=\"" + fmt(left + pw + 12) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" +
           fmt(left + pw + 32) + "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += text(left + pw + 38, ly, s.label, "start");
  }
  svg += "</svg>\n";
  return svg;
}

std::string render_heatmap(const HeatmapSpec& spec) {
  const double left = 80, top = 40, cell_w = 48, cell_h = 30, bottom = 50;
  const double cols = static_cast<double>(spec.values.cols());
  const double rows = static_cast<double>(spec.values.rows());
  const int width = static_cast<int>(left + cols * cell_w + 20);
  const int height = static_cast<int>(top + rows * cell_h + bottom);

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
    const double v = spec.values.data()[i];
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) hi = lo + 1;

  std::string svg = header(width, height);
  svg += text(width / 2.0, 22, spec.title, "middle", " font-size=\"15\"");
  for (Eigen::Index r = 0; r < spec.values.rows(); ++r) {
    const double y = top + static_cast<double>(r) * cell_h;
    svg += text(left - 6, y + cell_h / 2 + 4,
                r < static_cast<Eigen::Index>(spec.row_labels.size()) ? spec.row_labels[r] : "", "end");
    for (Eigen::Index c = 0; c < spec.values.cols(); ++c) {
      const double x = left + static_cast<double>(c) * cell_w;
      const double v = spec.values(r, c);
      if (std::isnan(v)) continue;
      // Light yellow (low) to dark blue (high).
      const double t = (v - lo) / (hi - lo);
      const int red = static_cast<int>(std::lround(255 - t * (255 - 8)));
      const int green = static_cast<int>(std::lround(247 - t * (247 - 48)));
      const int blue = static_cast<int>(std::lround(188 - t * (188 - 107)));
      char color[8];
      std::snprintf(color, sizeof(color), "#%02x%02x%02x", red, green, blue);
      svg += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(cell_w) +
             "\" height=\"" + fmt(cell_h) + "\" fill=\"" + color + "\" stroke=\"white\"/>\n";
      char label[16];
      std::snprintf(label, sizeof(label), "%.3f", v);
      svg += text(x + cell_w / 2, y + cell_h / 2 + 4, label, "middle",
                  t > 0.55 ? " fill=\"white\" font-size=\"10\"" : " font-size=\"10\"");
    }
  }
  for (Eigen::Index c = 0; c < spec.values.cols(); ++c) {
    svg += text(left + (static_cast<double>(c) + 0.5) * cell_w, top + rows * cell_h + 16,
                c < static_cast<Eigen::Index>(spec.col_labels.size()) ? spec.col_labels[c] : "");
  }
  svg += text(left + cols * cell_w / 2, height - 12, spec.x_label);
  svg += text(14, top + rows * cell_h / 2, spec.y_label, "middle",
              " transform=\"rotate(-90 14 " + fmt(top + rows * cell_h / 2) + ")\"");
  svg += "</svg>\n";
  return svg;
}

}  // namespace mlplab::lab
