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

#include "mlplab/pruning.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "mlplab/metrics.hpp"
#include "test_support.hpp"

namespace mlplab {
namespace {

using testing::error_code_of;

// Full-sort reference: zero every |w| <= the k-th smallest magnitude.
std::vector<double> sort_oracle(std::vector<double> w, double p) {
  const auto k = static_cast<std::size_t>(p * static_cast<double>(w.size()));
  if (k == 0) return w;
  std::vector<double> mags;
  for (double v : w) mags.push_back(std::abs(v));
  std::sort(mags.begin(), mags.end());
  const double threshold = mags[k - 1];
  for (double& v : w) {
    if (std::abs(v) <= threshold) v = 0.0;
  }
  return w;
}

Eigen::RowVectorXd row_of(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::RowVectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> vec_of(const Eigen::RowVectorXd& v) { return {v.data(), v.data() + v.size()}; }

// Distinct magnitudes, random signs.
std::vector<double> tie_free(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::set<double> seen;
  std::vector<double> out;
  while (out.size() < n) {
    const double v = u(rng);
    if (v != 0.0 && seen.insert(std::abs(v)).second) out.push_back(v);
  }
  return out;
}

MlpD model_with_w2(const std::vector<double>& w2) {
  MlpD m = MlpD::zeros(static_cast<Eigen::Index>(w2.size()));
  m.w2 = row_of(w2);
  return m;
}

TEST(PruneCount, FloorOfFraction) {
  EXPECT_EQ(prune_count(0.5, 4), 2);
  EXPECT_EQ(prune_count(0.99, 24), 23);
  EXPECT_EQ(prune_count(0.95, 24 * 784), 17875);
  EXPECT_EQ(prune_count(0.0, 100), 0);
}

TEST(MagnitudePrune, WorkedExample) {
  const MlpD pruned = magnitude_prune(model_with_w2({0.1, -0.05, 0.3, 0.2}), 0.5);
  EXPECT_EQ(vec_of(pruned.w2), (std::vector<double>{0.0, 0.0, 0.3, 0.2}));
}

TEST(MagnitudePrune, TiesAtThresholdAreAllRemoved) {
  const MlpD pruned = magnitude_prune(model_with_w2({0.2, 0.2, 0.2, 0.5}), 0.25);
  EXPECT_EQ(vec_of(pruned.w2), (std::vector<double>{0.0, 0.0, 0.0, 0.5}));
  EXPECT_EQ(count_nonzero(pruned.w2), 1);
}

TEST(MagnitudePrune, ZeroFractionIsIdentity) {
  const MlpD m = init_mlp(8, 1);
  EXPECT_TRUE(magnitude_prune(m, 0.0) == m);
}

TEST(MagnitudePrune, RejectsBadFraction) {
  const MlpD m = init_mlp(2, 1);
  EXPECT_EQ(error_code_of([&] { magnitude_prune(m, 1.0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(error_code_of([&] { magnitude_prune(m, -0.1); }), ErrorCode::kInvalidArgument);
}

TEST(MagnitudePrune, PartitionMatchesFullSortOracle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(1, 100);
  std::uniform_real_distribution<double> frac(0.0, 0.999);
  for (int rep = 0; rep < 200; ++rep) {
    const auto w = tie_free(rng, static_cast<std::size_t>(size(rng)));
    const double p = frac(rng);
    const MlpD pruned = magnitude_prune(model_with_w2(w), p);
    const auto expected = sort_oracle(w, p);
    ASSERT_EQ(vec_of(pruned.w2), expected) << "rep " << rep;
    // Tie-free: exactly k weights go.
    const auto k = prune_count(p, static_cast<Eigen::Index>(w.size()));
    EXPECT_EQ(count_nonzero(pruned.w2), static_cast<Eigen::Index>(w.size()) - k);
  }
}

TEST(MagnitudePrune, ThresholdSelectionMatchesSort) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> w(static_cast<std::size_t>(rep % 100 + 1));
    for (double& v : w) v = std::round(u(rng) * 8) / 8;  // plenty of ties
    std::vector<double> mags;
    for (double v : w) mags.push_back(std::abs(v));
    std::sort(mags.begin(), mags.end());
    const auto k = static_cast<Eigen::Index>(rep % static_cast<int>(w.size()) + 1);
    EXPECT_EQ(magnitude_threshold<double>(w, k), mags[static_cast<std::size_t>(k - 1)]);
    const MlpD pruned = magnitude_prune(model_with_w2(w), 0.37);
    EXPECT_EQ(vec_of(pruned.w2), sort_oracle(w, 0.37));
  }
}

TEST(MagnitudePrune, LayerwiseMaskAndBiasesKept) {
  MlpD m = init_mlp(12, 3);
  m.b1.setConstant(0.25);
  m.b2 = -0.5;
  const MlpD before = m;
  const MlpD pruned = magnitude_prune(m, 0.9);
  EXPECT_TRUE(m == before);
  EXPECT_EQ(pruned.b1, m.b1);
  EXPECT_EQ(pruned.b2, m.b2);
  auto check_mask = [](const auto& original, const auto& after) {
    double max_removed = 0, min_kept = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < original.size(); ++i) {
      const double o = original.data()[i], a = after.data()[i];
      if (a == 0.0) {
        max_removed = std::max(max_removed, std::abs(o));
      } else {
        EXPECT_EQ(a, o);
        min_kept = std::min(min_kept, std::abs(o));
      }
    }
    EXPECT_LT(max_removed, min_kept);
  };
  check_mask(m.w1, pruned.w1);
  check_mask(m.w2, pruned.w2);
  EXPECT_EQ(count_nonzero(pruned.w1), m.w1.size() - prune_count(0.9, m.w1.size()));
  EXPECT_EQ(count_nonzero(pruned.w2), m.w2.size() - prune_count(0.9, m.w2.size()));
}

TEST(MagnitudePrune, RepeatedPruningNeverResurrects) {
  const MlpD m = init_mlp(16, 4);
  const MlpD once = magnitude_prune(m, 0.5);
  const MlpD twice = magnitude_prune(once, 0.5);
  // The second pass's threshold is zero (half the weights already are), so
  // nothing beyond the first pass is removed.
  EXPECT_EQ(count_nonzero(twice.w1), count_nonzero(once.w1));
  EXPECT_EQ(count_nonzero(twice.w2), count_nonzero(once.w2));
  for (Eigen::Index i = 0; i < once.w1.size(); ++i) {
    if (once.w1.data()[i] == 0.0) EXPECT_EQ(twice.w1.data()[i], 0.0);
  }
}

TEST(DeadNeurons, ForcedNegativeUnit) {
  MlpD m = init_mlp(4, 5);
  m.w1.row(2).setZero();
  m.b1(2) = -1.0;
  const FeatureMatrix x = FeatureMatrix::Random(20, 784).cwiseAbs();
  const DeadNeurons dead = dead_neurons(m, x);
  ASSERT_GE(dead.count(), 1);
  EXPECT_NE(std::find(dead.indices.begin(), dead.indices.end(), 2), dead.indices.end());
}

TEST(DeadNeurons, MatchesRowByRowForwardPass) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    MlpD m = init_mlp(10, static_cast<std::uint64_t>(rep));
    for (Eigen::Index j = 0; j < 10; ++j) m.b1(j) = n(rng) - 1.0;
    const FeatureMatrix x = FeatureMatrix::Random(8, 784).cwiseAbs() * 0.05;
    std::vector<Eigen::Index> expected;
    for (Eigen::Index j = 0; j < 10; ++j) {
      bool always_zero = true;
      for (Eigen::Index r = 0; r < x.rows(); ++r) always_zero = always_zero && forward(m, x.row(r)).a1(j) == 0.0;
      if (always_zero) expected.push_back(j);
    }
    EXPECT_EQ(dead_neurons(m, x).indices, expected);
  }
}

TEST(PruneSweep, FreshCopyPerLevel) {
  BinaryTask task;
  task.val_x = FeatureMatrix::Random(40, 784).cwiseAbs();
  task.val_y = Eigen::VectorXd::Zero(40);
  for (Eigen::Index i = 0; i < 40; i += 2) task.val_y(i) = 1;
  task.train_x = task.val_x;
  task.train_y = task.val_y;
  const MlpD m = init_mlp(6, 10);
  const std::vector<double> levels = {0.0, 0.5, 0.9, 0.5};
  const auto reports = prune_sweep(m, task, levels);
  ASSERT_EQ(reports.size(), 4u);
  EXPECT_EQ(reports[0].delta_pct, 0.0);
  EXPECT_EQ(reports[0].f1_after, reports[0].f1_before);
  // Level 0.5 appears twice; identical results show the sweep is not cumulative.
  EXPECT_EQ(reports[1].nnz_w1_after, reports[3].nnz_w1_after);
  EXPECT_EQ(reports[1].f1_after, reports[3].f1_after);
  for (const auto& r : reports) {
    EXPECT_LE(r.nnz_w1_after, r.nnz_w1_before);
    EXPECT_LE(r.nnz_w2_after, r.nnz_w2_before);
    const MlpD pruned = magnitude_prune(m, r.prune_prob);
    EXPECT_EQ(r.nnz_w1_after, count_nonzero(pruned.w1));
    EXPECT_EQ(r.f1_after, f1(ScoredBatch(predict(pruned, task.val_x), task.val_y)));
    EXPECT_EQ(r.dead_after, dead_neurons(pruned, task.val_x).count());
    if (r.f1_before > 0) {
      EXPECT_DOUBLE_EQ(r.delta_pct, 100.0 * (r.f1_after - r.f1_before) / r.f1_before);
    }
  }
}

TEST(PercentChange, ZeroBaseline) {
  EXPECT_EQ(percent_change(0.0, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(percent_change(0.8, 0.6), -25.0);
}

TEST(PruneSweep, DefaultLevels) {
  EXPECT_EQ(default_sparsity_levels(), (std::vector<double>{0.50, 0.80, 0.90, 0.95, 0.99}));
}

}  // namespace
}  // namespace mlplab
