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

#include "mlplab/lab/pgm.hpp"

#include <algorithm>
#include <cmath>

#include "mlplab/lab/csv.hpp"

namespace mlplab::lab {
namespace {

std::string grid_to_pgm(const SaliencyGrid& unit) {
  std::string out = "P2\n28 28\n255\n";
  for (int r = 0; r < kImageSide; ++r) {
    for (int c = 0; c < kImageSide; ++c) {
      if (c) out += ' ';
      out += std::to_string(std::lround(std::clamp(unit(r, c), 0.0, 1.0) * 255.0));
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string saliency_to_pgm(const SaliencyMap& map) { return grid_to_pgm(map.normalized()); }

std::string saliency_to_csv(const SaliencyMap& map) {
  std::string out;
  for (int r = 0; r < kImageSide; ++r) {
    for (int c = 0; c < kImageSide; ++c) {
      if (c) out += ',';
      out += format_number(map.grid(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string image_to_pgm(const Eigen::Ref<const Eigen::RowVectorXd>& image) {
  SaliencyGrid g;
  for (int i = 0; i < kImagePixels; ++i) g(i / kImageSide, i % kImageSide) = image(i);
  return grid_to_pgm(g);
}

}  // namespace mlplab::lab
