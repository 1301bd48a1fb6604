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

#ifndef MLPLAB_TSNE_HPP_
#define MLPLAB_TSNE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mlplab {

struct TsneConfig {
  double perplexity = 30;
  int iterations = 1000;
  double learning_rate = 200;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  int momentum_switch_iter = 250;
  double exaggeration = 12;
  int exaggeration_iters = 250;
  std::uint64_t seed = 0;
  Eigen::Index subsample_n = 1000;

  void validate() const;
};

struct Embedding {
  Eigen::MatrixX2d points;
  std::vector<int> labels;
  double kl_initial = 0;
  double kl_final = 0;
};

// Row-normalized Gaussian affinities p(j|i) with per-row precisions found by
// bisection so that each row's entropy matches log(perplexity).
struct ConditionalAffinities {
  Eigen::MatrixXd p;          // N x N, zero diagonal, rows sum to 1
  Eigen::VectorXd precision;  // beta_i = 1 / (2 sigma_i^2)
  Eigen::VectorXd entropy;    // nats
};

inline constexpr double kPerplexityTolerance = 1e-5;  // |H - log(perplexity)|, nats
inline constexpr int kMaxBisectionSteps = 50;

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& x);

ConditionalAffinities conditional_affinities(const Eigen::MatrixXd& x, double perplexity);

/// (P_cond + P_cond^T) / 2N.
Eigen::MatrixXd joint_probabilities(const Eigen::MatrixXd& x, double perplexity);

/// Student-t (one degree of freedom) affinities of a 2-D layout, summing to 1.
Eigen::MatrixXd student_t_affinities(const Eigen::MatrixX2d& y);

/// KL(P || Q(y)) over off-diagonal entries with p > 0.
double kl_divergence(const Eigen::MatrixXd& p, const Eigen::MatrixX2d& y);

/// Gradient of kl_divergence with respect to y.
Eigen::MatrixX2d kl_gradient(const Eigen::MatrixXd& p, const Eigen::MatrixX2d& y);

/// Exact O(N^2) t-SNE of the rows of `x`. Throws kDegenerateInput for fewer
/// than 10 rows or when every row is identical.
Embedding tsne_embed(const Eigen::MatrixXd& x, std::span<const int> labels, const TsneConfig& cfg);

/// `k` distinct indices drawn uniformly from [0, n), returned sorted.
std::vector<Eigen::Index> subsample_indices(Eigen::Index n, Eigen::Index k, std::uint64_t seed);

/// Fraction of points whose nearest class centroid is their own class.
double nearest_centroid_accuracy(const Eigen::MatrixXd& points, std::span<const int> labels);

}  // namespace mlplab

#endif  // MLPLAB_TSNE_HPP_
