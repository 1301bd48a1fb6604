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

#include "mlplab/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "mlplab/errors.hpp"

namespace mlplab {

void TsneConfig::validate() const {
  require(perplexity > 1 && perplexity < static_cast<double>(subsample_n),
          ErrorCode::kInvalidArgument, "perplexity must lie in (1, subsample_n)");
  require(iterations > 0 && momentum_switch_iter > 0 && exaggeration_iters > 0 && subsample_n > 0,
          ErrorCode::kInvalidArgument, "t-SNE counts must be positive");
  require(learning_rate > 0 && exaggeration >= 1, ErrorCode::kInvalidArgument,
          "t-SNE learning rate must be positive and exaggeration >= 1");
}

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& x) {
  const Eigen::VectorXd norms = x.rowwise().squaredNorm();
  Eigen::MatrixXd d = -2.0 * (x * x.transpose());
  d.colwise() += norms;
  d.rowwise() += norms.transpose();
  d = d.cwiseMax(0.0);
  d.diagonal().setZero();
  return d;
}

ConditionalAffinities conditional_affinities(const Eigen::MatrixXd& x, double perplexity) {
  const Eigen::Index n = x.rows();
  require(perplexity > 1 && perplexity < static_cast<double>(n - 1), ErrorCode::kInvalidArgument,
          "perplexity must lie in (1, N - 1)");
  const Eigen::MatrixXd d = squared_distances(x);
  const double target = std::log(perplexity);

  ConditionalAffinities out;
  out.p = Eigen::MatrixXd::Zero(n, n);
  out.precision.resize(n);
  out.entropy.resize(n);
  Eigen::VectorXd shifted(n);
  Eigen::VectorXd row(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // Shift by the nearest distance so exp() cannot underflow for every j.
    double nearest = std::numeric_limits<double>::infinity();
    double mean = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      nearest = std::min(nearest, d(i, j));
      mean += d(i, j);
    }
    mean /= static_cast<double>(n - 1);
    for (Eigen::Index j = 0; j < n; ++j) shifted(j) = j == i ? 0.0 : d(i, j) - nearest;

    double beta = mean > nearest ? 1.0 / (mean - nearest) : 1.0;
    double lo = 0;
    double hi = std::numeric_limits<double>::infinity();
    double entropy = 0;
    double used = beta;
    for (int step = 0; step < kMaxBisectionSteps; ++step) {
      used = beta;
      double sum = 0;
      double weighted = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        row(j) = j == i ? 0.0 : std::exp(-beta * shifted(j));
        sum += row(j);
        weighted += row(j) * shifted(j);
      }
      entropy = std::log(sum) + beta * weighted / sum;
      row /= sum;
      const double gap = entropy - target;
      if (std::abs(gap) < kPerplexityTolerance) break;
      if (gap > 0) {
        lo = beta;
        beta = std::isinf(hi) ? beta * 2 : (beta + hi) / 2;
      } else {
        hi = beta;
        beta = (beta + lo) / 2;
      }
    }
    out.p.row(i) = row.transpose();
    out.precision(i) = used;
    out.entropy(i) = entropy;
  }
  return out;
}

Eigen::MatrixXd joint_probabilities(const Eigen::MatrixXd& x, double perplexity) {
  const Eigen::MatrixXd cond = conditional_affinities(x, perplexity).p;
  return (cond + cond.transpose()) / (2.0 * static_cast<double>(x.rows()));
}

namespace {

// Unnormalized kernel 1 / (1 + |y_i - y_j|^2) with zero diagonal.
Eigen::MatrixXd student_t_kernel(const Eigen::MatrixX2d& y) {
  const Eigen::VectorXd norms = y.rowwise().squaredNorm();
  Eigen::MatrixXd k = -2.0 * (y * y.transpose());
  k.colwise() += norms;
  k.rowwise() += norms.transpose();
  k = (1.0 + k.array().max(0.0)).inverse().matrix();
  k.diagonal().setZero();
  return k;
}

Eigen::MatrixX2d gradient_from_kernel(const Eigen::MatrixXd& p, const Eigen::MatrixXd& kernel,
                                      const Eigen::MatrixX2d& y) {
  const Eigen::MatrixXd q = kernel / kernel.sum();
  const Eigen::MatrixXd w = ((p - q).array() * kernel.array()).matrix();
  Eigen::MatrixX2d g = w.rowwise().sum().asDiagonal() * y;
  g.noalias() -= w * y;
  return 4.0 * g;
}

}  // namespace

Eigen::MatrixXd student_t_affinities(const Eigen::MatrixX2d& y) {
  const Eigen::MatrixXd k = student_t_kernel(y);
  return k / k.sum();
}

double kl_divergence(const Eigen::MatrixXd& p, const Eigen::MatrixX2d& y) {
  const Eigen::MatrixXd q = student_t_affinities(y);
  double kl = 0;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      if (i != j && p(i, j) > 0) kl += p(i, j) * std::log(p(i, j) / q(i, j));
    }
  }
  return kl;
}

Eigen::MatrixX2d kl_gradient(const Eigen::MatrixXd& p, const Eigen::MatrixX2d& y) {
  return gradient_from_kernel(p, student_t_kernel(y), y);
}

Embedding tsne_embed(const Eigen::MatrixXd& x, std::span<const int> labels, const TsneConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = x.rows();
  require(n >= 10, ErrorCode::kDegenerateInput, "t-SNE needs at least 10 rows");
  require(n <= cfg.subsample_n, ErrorCode::kInvalidArgument,
          "t-SNE input exceeds the subsample cap; subsample first");
  require(labels.empty() || static_cast<Eigen::Index>(labels.size()) == n,
          ErrorCode::kShapeMismatch, "one label per row expected");
  bool all_same = true;
  for (Eigen::Index i = 1; i < n && all_same; ++i) all_same = x.row(i) == x.row(0);
  require(!all_same, ErrorCode::kDegenerateInput, "all t-SNE input rows are identical");

  const Eigen::MatrixXd p = joint_probabilities(x, cfg.perplexity);

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> init(0.0, 1e-2);  // variance 1e-4
  Eigen::MatrixX2d y(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i, 0) = init(rng);
    y(i, 1) = init(rng);
  }

  Embedding out;
  out.labels.assign(labels.begin(), labels.end());
  out.kl_initial = kl_divergence(p, y);

  Eigen::MatrixX2d update = Eigen::MatrixX2d::Zero(n, 2);
  Eigen::MatrixX2d gains = Eigen::MatrixX2d::Ones(n, 2);
  const Eigen::MatrixXd p_exaggerated = p * cfg.exaggeration;
  for (int iter = 0; iter < cfg.iterations; ++iter) {
    const Eigen::MatrixXd& target = iter < cfg.exaggeration_iters ? p_exaggerated : p;
    const double momentum =
        iter < cfg.momentum_switch_iter ? cfg.initial_momentum : cfg.final_momentum;
    const Eigen::MatrixX2d grad = kl_gradient(target, y);
    // Delta-bar-delta gains: grow while the previous step still points downhill.
    for (Eigen::Index i = 0; i < grad.size(); ++i) {
      const bool downhill = (grad(i) > 0) != (update(i) > 0);
      gains(i) = std::max(downhill ? gains(i) + 0.2 : gains(i) * 0.8, 0.01);
    }
    update = momentum * update - cfg.learning_rate * gains.cwiseProduct(grad);
    y += update;
    y.rowwise() -= y.colwise().mean();
  }
  out.kl_final = kl_divergence(p, y);
  out.points = std::move(y);
  return out;
}

std::vector<Eigen::Index> subsample_indices(Eigen::Index n, Eigen::Index k, std::uint64_t seed) {
  require(k >= 0, ErrorCode::kInvalidArgument, "negative subsample size");
  std::vector<Eigen::Index> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), Eigen::Index{0});
  if (k >= n) return all;
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates.
  for (Eigen::Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Eigen::Index> pick(i, n - 1);
    std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(pick(rng))]);
  }
  all.resize(static_cast<std::size_t>(k));
  std::sort(all.begin(), all.end());
  return all;
}

double nearest_centroid_accuracy(const Eigen::MatrixXd& points, std::span<const int> labels) {
  require(static_cast<Eigen::Index>(labels.size()) == points.rows() && points.rows() > 0,
          ErrorCode::kShapeMismatch, "one label per point expected");
  std::map<int, std::pair<Eigen::VectorXd, Eigen::Index>> sums;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    auto [it, inserted] = sums.try_emplace(labels[static_cast<std::size_t>(i)],
                                           Eigen::VectorXd::Zero(points.cols()), 0);
    it->second.first += points.row(i).transpose();
    it->second.second += 1;
  }
  Eigen::Index correct = 0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& [label, acc] : sums) {
      const Eigen::VectorXd centroid = acc.first / static_cast<double>(acc.second);
      const double dist = (points.row(i).transpose() - centroid).squaredNorm();
      if (dist < best_dist) {
        best_dist = dist;
        best = label;
      }
    }
    correct += best == labels[static_cast<std::size_t>(i)];
  }
  return static_cast<double>(correct) / static_cast<double>(points.rows());
}

}  // namespace mlplab
