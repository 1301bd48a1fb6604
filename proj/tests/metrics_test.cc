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
#include <map>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace mlplab {
namespace {

using testing::error_code_of;

// ROC curve swept threshold by threshold (tied scores move together), area by
// the trapezoid rule.
double trapezoid_auc(const std::vector<double>& s, const std::vector<double>& y) {
  std::map<double, std::pair<int, int>, std::greater<>> by_score;  // score -> (pos, neg)
  int pos = 0, neg = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] > 0.5) {
      ++by_score[s[i]].first;
      ++pos;
    } else {
      ++by_score[s[i]].second;
      ++neg;
    }
  }
  double area = 0, tpr = 0, fpr = 0;
  for (const auto& [score, counts] : by_score) {
    const double next_tpr = tpr + static_cast<double>(counts.first) / pos;
    const double next_fpr = fpr + static_cast<double>(counts.second) / neg;
    area += (next_fpr - fpr) * (tpr + next_tpr) / 2;
    tpr = next_tpr;
    fpr = next_fpr;
  }
  return area;
}

double pairwise_auc(const std::vector<double>& s, const std::vector<double>& y) {
  double wins = 0;
  int pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[i] > 0.5 && y[j] < 0.5) {
        ++pairs;
        wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
      }
    }
  }
  return wins / pairs;
}

struct Batch {
  std::vector<double> s, y;
};

// Scores drawn from a coarse grid so ties are common.
Batch random_batch(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(2, 50), grid(0, 20), coin(0, 1);
  Batch b;
  const int n = size(rng);
  for (int i = 0; i < n; ++i) {
    b.s.push_back(grid(rng) / 20.0);
    b.y.push_back(coin(rng));
  }
  b.y[0] = 1;
  b.y[1] = 0;
  return b;
}

TEST(Confusion, Examples) {
  EXPECT_EQ(confusion(ScoredBatch(std::vector<double>{0.9, 0.1}, std::vector<double>{1, 0})),
            (Confusion{1, 0, 1, 0}));
  EXPECT_EQ(confusion(ScoredBatch(std::vector<double>{0.5}, std::vector<double>{0})),
            (Confusion{0, 1, 0, 0}));
  EXPECT_EQ(confusion(ScoredBatch(std::vector<double>{0.6, 0.4, 0.7}, std::vector<double>{0, 1, 1})),
            (Confusion{1, 1, 0, 1}));
}

TEST(F1, Examples) {
  EXPECT_EQ(f1(ScoredBatch(std::vector<double>{0.9, 0.2, 0.8}, std::vector<double>{1, 0, 1})), 1.0);
  EXPECT_EQ(f1(ScoredBatch(std::vector<double>{0.1, 0.2}, std::vector<double>{1, 0})), 0.0);
  EXPECT_EQ(f1(Confusion{1, 1, 0, 1}), 0.5);
  EXPECT_EQ(f1(Confusion{0, 0, 5, 0}), 0.0);
  EXPECT_EQ(accuracy(Confusion{3, 1, 4, 2}), 0.7);
}

TEST(F1, MatchesRowByRowRecount) {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    const Batch b = random_batch(rng);
    int tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < b.s.size(); ++i) {
      const bool pred = b.s[i] >= 0.5;
      const bool truth = b.y[i] > 0.5;
      tp += pred && truth;
      fp += pred && !truth;
      fn += !pred && truth;
      tn += !pred && !truth;
    }
    const Confusion c = confusion(ScoredBatch(b.s, b.y));
    EXPECT_EQ(c, (Confusion{tp, fp, tn, fn}));
    const double expected = 2 * tp + fp + fn == 0 ? 0.0 : 2.0 * tp / (2.0 * tp + fp + fn);
    EXPECT_EQ(f1(ScoredBatch(b.s, b.y)), expected);
  }
}

TEST(Auc, Examples) {
  EXPECT_EQ(auc(ScoredBatch(std::vector<double>{0.9, 0.8, 0.2, 0.1}, std::vector<double>{1, 1, 0, 0})), 1.0);
  EXPECT_EQ(auc(ScoredBatch(std::vector<double>{0.3, 0.3, 0.3, 0.3}, std::vector<double>{1, 0, 1, 0})), 0.5);
  // Two positive-negative pairs: 0.8 beats 0.6, 0.4 loses to it.
  const std::vector<double> s = {0.8, 0.6, 0.4}, y = {1, 0, 1};
  EXPECT_EQ(auc(ScoredBatch(s, y)), pairwise_auc(s, y));
  EXPECT_EQ(auc(ScoredBatch(s, y)), 0.5);
}

TEST(Auc, SingleClassIsAnError) {
  EXPECT_EQ(error_code_of([] { auc(ScoredBatch(std::vector<double>{0.1, 0.9}, std::vector<double>{1, 1})); }),
            ErrorCode::kSingleClass);
}

TEST(Auc, EqualsTrapezoidAndPairwiseOracles) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    const Batch b = random_batch(rng);
    const double got = auc(ScoredBatch(b.s, b.y));
    EXPECT_NEAR(got, trapezoid_auc(b.s, b.y), 1e-12);
    EXPECT_NEAR(got, pairwise_auc(b.s, b.y), 1e-12);
  }
}

TEST(Metrics, PermutationInvariant) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    Batch b = random_batch(rng);
    const double a0 = auc(ScoredBatch(b.s, b.y));
    const double f0 = f1(ScoredBatch(b.s, b.y));
    std::vector<std::size_t> idx(b.s.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    Batch p;
    for (auto i : idx) {
      p.s.push_back(b.s[i]);
      p.y.push_back(b.y[i]);
    }
    EXPECT_EQ(auc(ScoredBatch(p.s, p.y)), a0);
    EXPECT_EQ(f1(ScoredBatch(p.s, p.y)), f0);
  }
}

TEST(Auc, InvariantUnderMonotoneTransform) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 50; ++rep) {
    Batch b = random_batch(rng);
    std::vector<double> t;
    for (double v : b.s) t.push_back(std::pow(v, 3) * 0.5 + 0.1);
    EXPECT_EQ(auc(ScoredBatch(t, b.y)), auc(ScoredBatch(b.s, b.y)));
  }
}

TEST(Aggregate, PopulationStd) {
  const auto a = aggregate(std::vector<double>{0.9, 0.9, 0.9});
  EXPECT_NEAR(a.mean, 0.9, 1e-15);
  EXPECT_EQ(a.std, 0.0);
  const auto b = aggregate(std::vector<double>{0.8, 1.0});
  EXPECT_NEAR(b.mean, 0.9, 1e-15);
  EXPECT_NEAR(b.std, 0.1, 1e-15);
  const auto c = aggregate(std::vector<double>{0.42});
  EXPECT_EQ(c.mean, 0.42);
  EXPECT_EQ(c.std, 0.0);
  EXPECT_EQ(error_code_of([] { aggregate(std::vector<double>{}); }), ErrorCode::kInvalidArgument);
}

TEST(ScoredBatch, RejectsMismatchedLengths) {
  EXPECT_EQ(error_code_of([] { ScoredBatch(std::vector<double>{0.1}, std::vector<double>{1, 0}); }),
            ErrorCode::kShapeMismatch);
}

}  // namespace
}  // namespace mlplab
