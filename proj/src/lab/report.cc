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

#include "mlplab/lab/report.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "mlplab/errors.hpp"
#include "mlplab/fetch.hpp"
#include "mlplab/lab/csv.hpp"
#include "mlplab/lab/svg.hpp"

namespace mlplab::lab {
namespace {

namespace fs = std::filesystem;

CsvTable read_summary(const fs::path& path) {
  CsvTable t = read_csv(path);
  require(!t.rows.empty(), ErrorCode::kMalformedCsv, path.string() + " has no data rows");
  return t;
}

// Groups rows by the value of `key_col` (first-appearance order) and turns each
// group into a series over `x_col`.
std::vector<Series> series_by(const CsvTable& t, const std::string& key_col,
                              const std::string& label_prefix, const std::string& x_col,
                              const std::string& mean_col, const std::string& std_col,
                              const std::vector<std::pair<std::string, std::string>>& filter = {}) {
  const std::size_t key = t.column(key_col), x = t.column(x_col), m = t.column(mean_col);
  const std::size_t s = std_col.empty() ? 0 : t.column(std_col);
  std::vector<std::size_t> fcols;
  for (const auto& f : filter) fcols.push_back(t.column(f.first));
  std::vector<Series> out;
  for (const auto& row : t.rows) {
    bool keep = true;
    for (std::size_t i = 0; i < filter.size(); ++i) keep = keep && row[fcols[i]] == filter[i].second;
    if (!keep) continue;
    const std::string label = label_prefix + row[key];
    auto it = std::find_if(out.begin(), out.end(), [&](const Series& se) { return se.label == label; });
    if (it == out.end()) {
      out.push_back(Series{label, {}, {}, {}});
      it = out.end() - 1;
    }
    it->x.push_back(parse_number(row[x]));
    it->mean.push_back(parse_number(row[m]));
    if (!std_col.empty()) it->std.push_back(parse_number(row[s]));
  }
  for (auto& se : out) {
    // Keep x ascending; the renderer draws points in order.
    std::vector<std::size_t> order(se.x.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return se.x[a] < se.x[b]; });
    Series sorted{se.label, {}, {}, {}};
    for (auto i : order) {
      sorted.x.push_back(se.x[i]);
      sorted.mean.push_back(se.mean[i]);
      if (!se.std.empty()) sorted.std.push_back(se.std[i]);
    }
    se = std::move(sorted);
  }
  return out;
}

std::vector<std::string> distinct(const CsvTable& t, const std::string& col) {
  std::vector<std::string> values;
  const std::size_t c = t.column(col);
  for (const auto& row : t.rows) {
    if (std::find(values.begin(), values.end(), row[c]) == values.end()) values.push_back(row[c]);
  }
  return values;
}

class Writer {
 public:
  explicit Writer(fs::path run_dir) : run_dir_(std::move(run_dir)) {}

  void write(const std::string& name, const std::string& svg) {
    const fs::path rel = fs::path("report") / name;
    write_file_atomic(run_dir_ / rel, std::span<const std::uint8_t>(
                                          reinterpret_cast<const std::uint8_t*>(svg.data()), svg.size()));
    written_.push_back(rel);
  }

  std::vector<fs::path> take() { return std::move(written_); }

 private:
  fs::path run_dir_;
  std::vector<fs::path> written_;
};

void capacity_charts(const fs::path& dir, Writer& w) {
  const CsvTable summary = read_summary(dir / "summary.csv");
  ChartSpec combined{"Best validation F1 vs hidden size", "hidden units", "mean best F1", true,
                     std::nullopt, 1.0};
  w.write("capacity.svg", render_line_chart(combined, series_by(summary, "pair", "pair ", "hidden",
                                                                  "mean_best_f1", "std_best_f1")));
  if (!fs::exists(dir / "curves.csv")) return;
  const CsvTable curves = read_summary(dir / "curves.csv");
  for (const auto& pair : distinct(curves, "pair")) {
    ChartSpec spec{"Validation F1 per epoch, pair " + pair, "epoch", "val F1", false, std::nullopt, 1.0};
    w.write("capacity_" + pair + ".svg",
            render_line_chart(spec, series_by(curves, "hidden", "H=", "epoch", "mean_val_f1",
                                              "std_val_f1", {{"pair", pair}})));
  }
}

void grid_charts(const fs::path& dir, Writer& w) {
  const CsvTable summary = read_summary(dir / "summary.csv");
  ChartSpec spec{"Best validation F1 vs learning rate", "learning rate", "mean best F1", true,
                 std::nullopt, 1.0};
  w.write("grid_lr.svg", render_line_chart(spec, series_by(summary, "hidden", "H=", "lr",
                                                             "mean_best_f1", "std_best_f1")));
  if (!fs::exists(dir / "heatmap.csv")) return;
  const CsvTable heat = read_summary(dir / "heatmap.csv");
  HeatmapSpec hs;
  hs.title = "Mean best F1, learning rate x hidden size";
  hs.x_label = "hidden units";
  hs.y_label = "learning rate";
  for (std::size_t c = 1; c < heat.header.size(); ++c) hs.col_labels.push_back(heat.header[c]);
  hs.values.resize(static_cast<Eigen::Index>(heat.rows.size()),
                   static_cast<Eigen::Index>(hs.col_labels.size()));
  for (std::size_t r = 0; r < heat.rows.size(); ++r) {
    hs.row_labels.push_back(heat.rows[r][0]);
    for (std::size_t c = 1; c < heat.header.size(); ++c) {
      hs.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c - 1)) =
          parse_number(heat.rows[r][c]);
    }
  }
  w.write("grid_heatmap.svg", render_heatmap(hs));
}

void prune_charts(const fs::path& dir, Writer& w) {
  const CsvTable summary = read_summary(dir / "summary.csv");
  for (const auto& pair : distinct(summary, "pair")) {
    ChartSpec spec{"F1 change after pruning, pair " + pair, "fraction pruned", "F1 change (%)", false,
                   std::nullopt, std::nullopt};
    w.write("prune_" + pair + ".svg",
            render_line_chart(spec, series_by(summary, "hidden", "H=", "prune_prob",
                                              "mean_delta_pct", "std_delta_pct", {{"pair", pair}})));
  }
}

void robust_charts(const fs::path& dir, Writer& w) {
  const CsvTable summary = read_summary(dir / "summary.csv");
  ChartSpec gauss{"F1 under Gaussian noise", "noise sigma", "mean F1", false, std::nullopt, 1.0};
  auto gaussian = series_by(summary, "hidden", "H=", "param", "mean_f1", "std_f1", {{"kind", "gaussian"}});
  if (!gaussian.empty()) w.write("robust_gaussian.svg", render_line_chart(gauss, gaussian));
  ChartSpec occl{"F1 under patch occlusion", "hidden units", "mean F1", false, std::nullopt, 1.0};
  auto occlusion = series_by(summary, "param", "patch ", "hidden", "mean_f1", "std_f1", {{"kind", "occlusion"}});
  if (!occlusion.empty()) w.write("robust_occlusion.svg", render_line_chart(occl, occlusion));
}

}  // namespace

std::vector<fs::path> render_report(const fs::path& run_dir) {
  Writer w(run_dir);
  bool any = false;
  const std::pair<const char*, void (*)(const fs::path&, Writer&)> stages[] = {
      {"grid", grid_charts},
      {"capacity", capacity_charts},
      {"prune", prune_charts},
      {"robust", robust_charts}};
  for (const auto& [name, render] : stages) {
    const fs::path dir = run_dir / name;
    if (!fs::exists(dir / "summary.csv")) continue;
    any = true;
    render(dir, w);
  }
  require(any, ErrorCode::kMalformedCsv, "no stage summaries under " + run_dir.string());
  return w.take();
}

}  // namespace mlplab::lab
