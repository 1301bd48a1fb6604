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

#ifndef MLPLAB_SALIENCY_HPP_
#define MLPLAB_SALIENCY_HPP_

#include <cmath>

#include "mlplab/mlp.hpp"

namespace mlplab {

using SaliencyGrid = Eigen::Matrix<double, kImageSide, kImageSide, Eigen::RowMajor>;

struct SaliencyMap {
  SaliencyGrid grid = SaliencyGrid::Zero();  // |p(x + eps e_i) - p(x)|, row-major pixel order
  double base_score = 0;
  double epsilon = 0.01;

  /// grid / max(grid); all zeros stays all zeros.
  SaliencyGrid normalized() const;
};

/// One-sided perturbation saliency: each pixel in turn is raised by epsilon
/// (no clipping) and the absolute change in output probability recorded.
template <typename Scalar, typename Derived>
SaliencyMap saliency_map(const Mlp<Scalar>& model, const Eigen::MatrixBase<Derived>& image,
                         double epsilon = 0.01) {
  require(image.size() == kImagePixels && model.input_size() == kImagePixels,
          ErrorCode::kShapeMismatch, "saliency needs a 784-pixel image");
  Vector<Scalar> x = image.derived().reshaped().template cast<Scalar>();
  SaliencyMap out;
  out.epsilon = epsilon;
  const Scalar base = forward(model, x).p;
  out.base_score = static_cast<double>(base);
  for (Eigen::Index i = 0; i < kImagePixels; ++i) {
    const Scalar saved = x(i);
    x(i) += static_cast<Scalar>(epsilon);
    const Scalar perturbed = forward(model, x).p;
    x(i) = saved;
    out.grid(i / kImageSide, i % kImageSide) = static_cast<double>(std::abs(perturbed - base));
  }
  return out;
}

/// Cosine of the angle between two maps viewed as 784-vectors; 0 if either is all zero.
double cosine_similarity(const SaliencyGrid& a, const SaliencyGrid& b);

}  // namespace mlplab

#endif  // MLPLAB_SALIENCY_HPP_
