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

#include "mlplab/saliency.hpp"

namespace mlplab {

SaliencyGrid SaliencyMap::normalized() const {
  const double peak = grid.maxCoeff();
  return peak > 0 ? SaliencyGrid(grid / peak) : SaliencyGrid(grid);
}

double cosine_similarity(const SaliencyGrid& a, const SaliencyGrid& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0 || nb == 0) return 0.0;
  return a.cwiseProduct(b).sum() / (na * nb);
}

}  // namespace mlplab
