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

#ifndef MLPLAB_METRICS_HPP_
#define MLPLAB_METRICS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace mlplab {

// Non-owning view of N probabilities and their {0,1} labels.
struct ScoredBatch {
  std::span<const double> scores;
  std::span<const double> labels;

  ScoredBatch(std::span<const double> s, std::span<const double> l);
  ScoredBatch(const Eigen::VectorXd& s, const Eigen::VectorXd& l)
      : ScoredBatch(std::span<const double>(s.data(), static_cast<std::size_t>(s.size())),
                    std::span<const double>(l.data(), static_cast<std::size_t>(l.size()))) {}
  ScoredBatch(const std::vector<double>& s, const std::vector<double>& l)
      : ScoredBatch(std::span<const double>(s), std::span<const double>(l)) {}

  std::size_t size() const { return scores.size(); }
};

struct Confusion {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  friend bool operator==(const Confusion&, const Confusion&) = default;
};

inline constexpr double kDecisionThreshold = 0.5;

/// A row is predicted positive iff score >= threshold.
Confusion confusion(const ScoredBatch& batch, double threshold = kDecisionThreshold);

/// 2tp / (2tp + fp + fn), or 0 when that denominator is 0.
double f1(const Confusion& c);
double f1(const ScoredBatch& batch, double threshold = kDecisionThreshold);

double accuracy(const Confusion& c);

/// Mann-Whitney AUC with mid-ranks for ties. Throws kSingleClass unless both
/// labels occur.
double auc(const ScoredBatch& batch);

struct MeanStd {
  double mean = 0;
  double std = 0;  // population
};

MeanStd aggregate(std::span<const double> values);
inline MeanStd aggregate(const std::vector<double>& values) {
  return aggregate(std::span<const double>(values));
}

}  // namespace mlplab

#endif  // MLPLAB_METRICS_HPP_
