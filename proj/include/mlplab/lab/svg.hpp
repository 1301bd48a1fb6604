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

#ifndef MLPLAB_LAB_SVG_HPP_
#define MLPLAB_LAB_SVG_HPP_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace mlplab::lab {

// One line with an optional +-std band. `std` may be empty.
struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> mean;
  std::vector<double> std;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::optional<double> y_min;
  std::optional<double> y_max;
  int width = 720;
  int height = 440;
};

/// Standalone SVG document. Output is a pure function of the inputs.
std::string render_line_chart(const ChartSpec& spec, const std::vector<Series>& series);

struct HeatmapSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<std::string> col_labels;
  std::vector<std::string> row_labels;
  Eigen::MatrixXd values;  // rows x cols; NaN renders as an empty cell
};

std::string render_heatmap(const HeatmapSpec& spec);

}  // namespace mlplab::lab

#endif  // MLPLAB_LAB_SVG_HPP_
