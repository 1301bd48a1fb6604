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

#ifndef MLPLAB_PRUNING_HPP_
#define MLPLAB_PRUNING_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "mlplab/mlp.hpp"
#include "mlplab/mnist.hpp"

namespace mlplab {

/// Number of weights targeted at fraction p of `size`: floor(p * size).
inline Eigen::Index prune_count(double p, Eigen::Index size) {
  return static_cast<Eigen::Index>(p * static_cast<double>(size));
}

/// k-th smallest absolute value (1-based) via selection, not a full sort.
template <typename Scalar>
Scalar magnitude_threshold(std::span<const Scalar> values, Eigen::Index k) {
  require(k >= 1 && k <= static_cast<Eigen::Index>(values.size()), ErrorCode::kInvalidArgument,
          "k out of range");
  std::vector<Scalar> mags(values.size());
  std::transform(values.begin(), values.end(), mags.begin(), [](Scalar v) { return std::abs(v); });
  auto nth = mags.begin() + (k - 1);
  std::nth_element(mags.begin(), nth, mags.end());
  return *nth;
}

/// Zeroes every entry with |w| <= the k-th smallest magnitude, k = floor(p * size).
/// Ties at the threshold are all removed, so more than k entries can go.
template <typename Derived>
void prune_layer(Eigen::PlainObjectBase<Derived>& weights, double p) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index k = prune_count(p, weights.size());
  if (k <= 0) return;
  Scalar* data = weights.data();
  const Scalar threshold = magnitude_threshold<Scalar>(
      std::span<const Scalar>(data, static_cast<std::size_t>(weights.size())), k);
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (std::abs(data[i]) <= threshold) data[i] = Scalar(0);
  }
}

/// One-shot per-layer magnitude pruning of w1 and w2. Biases are kept.
/// Returns a new model; the input is not modified.
template <typename Scalar>
Mlp<Scalar> magnitude_prune(const Mlp<Scalar>& model, double p) {
  require(p >= 0.0 && p < 1.0, ErrorCode::kInvalidArgument, "prune fraction must lie in [0, 1)");
  Mlp<Scalar> pruned = model;
  prune_layer(pruned.w1, p);
  prune_layer(pruned.w2, p);
  return pruned;
}

template <typename Derived>
Eigen::Index count_nonzero(const Eigen::DenseBase<Derived>& weights) {
  return (weights.derived().array() != typename Derived::Scalar(0)).count();
}

struct DeadNeurons {
  std::vector<Eigen::Index> indices;

  Eigen::Index count() const { return static_cast<Eigen::Index>(indices.size()); }
};

/// Hidden units whose activation is exactly zero on every row of x.
template <typename Scalar, typename Derived>
DeadNeurons dead_neurons(const Mlp<Scalar>& model, const Eigen::MatrixBase<Derived>& x) {
  require(x.rows() > 0, ErrorCode::kInvalidArgument, "dead-neuron check needs data");
  const Matrix<Scalar> a1 = hidden_activations(model, x);
  DeadNeurons out;
  for (Eigen::Index j = 0; j < a1.cols(); ++j) {
    if ((a1.col(j).array() == Scalar(0)).all()) out.indices.push_back(j);
  }
  return out;
}

struct PruneReport {
  double prune_prob = 0;
  Eigen::Index nnz_w1_before = 0;
  Eigen::Index nnz_w1_after = 0;
  Eigen::Index nnz_w2_before = 0;
  Eigen::Index nnz_w2_after = 0;
  double f1_before = 0;
  double f1_after = 0;
  double delta_pct = 0;  // 0 when f1_before is 0
  Eigen::Index dead_before = 0;
  Eigen::Index dead_after = 0;
};

inline const std::vector<double>& default_sparsity_levels() {
  static const std::vector<double> levels = {0.50, 0.80, 0.90, 0.95, 0.99};
  return levels;
}

double percent_change(double before, double after);

/// Prunes a fresh copy of `model` at every level and scores it on the
/// validation split.
std::vector<PruneReport> prune_sweep(const MlpD& model, const BinaryTask& task,
                                     std::span<const double> levels);

}  // namespace mlplab

#endif  // MLPLAB_PRUNING_HPP_
