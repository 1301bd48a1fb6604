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

#include "mlplab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mlplab/errors.hpp"

namespace mlplab {

ScoredBatch::ScoredBatch(std::span<const double> s, std::span<const double> l)
    : scores(s), labels(l) {
  require(scores.size() == labels.size(), ErrorCode::kShapeMismatch,
          "scores and labels differ in length");
}

Confusion confusion(const ScoredBatch& batch, double threshold) {
  Confusion c;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const bool predicted = batch.scores[i] >= threshold;
    const bool actual = batch.labels[i] > 0.5;
    if (predicted && actual) ++c.tp;
    else if (predicted) ++c.fp;
    else if (actual) ++c.fn;
    else ++c.tn;
  }
  return c;
}

double f1(const Confusion& c) {
  const std::int64_t denom = 2 * c.tp + c.fp + c.fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
}

double f1(const ScoredBatch& batch, double threshold) { return f1(confusion(batch, threshold)); }

double accuracy(const Confusion& c) {
  const std::int64_t n = c.tp + c.fp + c.tn + c.fn;
  return n == 0 ? 0.0 : static_cast<double>(c.tp + c.tn) / static_cast<double>(n);
}

double auc(const ScoredBatch& batch) {
  const std::size_t n = batch.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return batch.scores[a] < batch.scores[b]; });

  // Sum of 1-based mid-ranks over positives.
  double positive_rank_sum = 0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && batch.scores[order[j]] == batch.scores[order[i]]) ++j;
    const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (batch.labels[order[k]] > 0.5) {
        positive_rank_sum += mid_rank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = n - positives;
  require(positives > 0 && negatives > 0, ErrorCode::kSingleClass, "AUC needs both classes");
  const double np = static_cast<double>(positives);
  const double u = positive_rank_sum - np * (np + 1) / 2;
  return u / (np * static_cast<double>(negatives));
}

MeanStd aggregate(std::span<const double> values) {
  require(!values.empty(), ErrorCode::kInvalidArgument, "aggregate of nothing");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return MeanStd{mean, std::sqrt(ss / n)};
}

}  // namespace mlplab
