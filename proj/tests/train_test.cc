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

#include "mlplab/train.hpp"

#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace mlplab {
namespace {

// Class 1 images are brighter in the lower half; both classes are noisy.
BinaryTask toy_task(Eigen::Index n_train, Eigen::Index n_val, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 0.6);
  auto make = [&](Eigen::Index n, FeatureMatrix& x, Eigen::VectorXd& y) {
    x.resize(n, kImagePixels);
    y.resize(n);
    for (Eigen::Index r = 0; r < n; ++r) {
      y(r) = static_cast<double>(r % 2);
      for (Eigen::Index c = 0; c < kImagePixels; ++c) {
        const bool lower = c >= kImagePixels / 2;
        x(r, c) = u(rng) + ((lower == (y(r) > 0.5)) ? 0.4 : 0.0);
      }
    }
  };
  BinaryTask t;
  t.pair = {0, 1};
  make(n_train, t.train_x, t.train_y);
  make(n_val, t.val_x, t.val_y);
  return t;
}

TEST(TrainConfig, Validation) {
  TrainConfig cfg;
  cfg.validate();
  cfg.epochs = 0;
  EXPECT_EQ(testing::error_code_of([&] { cfg.validate(); }), ErrorCode::kInvalidArgument);
  cfg = {};
  cfg.batch_size = 0;
  EXPECT_EQ(testing::error_code_of([&] { cfg.validate(); }), ErrorCode::kInvalidArgument);
  cfg = {};
  cfg.lr = -1;
  EXPECT_EQ(testing::error_code_of([&] { cfg.validate(); }), ErrorCode::kInvalidArgument);
}

TEST(Train, LearnsToyTask) {
  const BinaryTask task = toy_task(256, 128, 1);
  TrainConfig cfg{8, 3e-2, 20, 64, 5};
  const TrainResult r = train(task, cfg);
  ASSERT_EQ(r.history.size(), 20u);
  EXPECT_LT(r.history.back().train_loss, r.history.front().train_loss);
  EXPECT_GT(r.history.back().val_f1, 0.95);
  for (std::size_t e = 0; e < r.history.size(); ++e) {
    const auto& rec = r.history[e];
    EXPECT_EQ(rec.epoch, static_cast<int>(e + 1));
    EXPECT_GE(rec.train_loss, 0.0);
    EXPECT_GE(rec.val_loss, 0.0);
    EXPECT_TRUE(rec.val_f1 >= 0.0 && rec.val_f1 <= 1.0);
    EXPECT_TRUE(rec.val_auc >= 0.0 && rec.val_auc <= 1.0);
  }
  const Evaluation final_eval = evaluate(r.model, task.val_x, task.val_y);
  EXPECT_EQ(final_eval.f1, r.history.back().val_f1);
  EXPECT_EQ(final_eval.loss, r.history.back().val_loss);
}

TEST(Train, ZeroLearningRateLeavesModelUnchanged) {
  const BinaryTask task = toy_task(100, 50, 2);
  TrainConfig cfg{4, 0.0, 100, 64, 3};
  const TrainResult r = train(task, cfg);
  EXPECT_TRUE(r.model == init_mlp(4, 3));
  ASSERT_EQ(r.history.size(), 100u);
  for (const auto& rec : r.history) {
    EXPECT_EQ(rec.val_loss, r.history.front().val_loss);
    EXPECT_EQ(rec.val_f1, r.history.front().val_f1);
    EXPECT_EQ(rec.val_auc, r.history.front().val_auc);
    // Batch order changes each epoch, so only the full-pass mean is comparable.
    EXPECT_NEAR(rec.train_loss, r.history.front().train_loss, 1e-12);
  }
}

TEST(Train, DeterministicPerConfig) {
  const BinaryTask task = toy_task(200, 60, 3);
  TrainConfig cfg{6, 1e-2, 5, 32, 11};
  const TrainResult a = train(task, cfg);
  const TrainResult b = train(task, cfg);
  EXPECT_TRUE(a.model == b.model);
  EXPECT_EQ(a.history, b.history);
  cfg.seed = 12;
  EXPECT_FALSE(train(task, cfg).model == a.model);
}

TEST(Train, ReportsDivergenceWithEpoch) {
  const BinaryTask task = toy_task(64, 20, 4);
  TrainConfig cfg{4, 1e300, 10, 16, 1};
  try {
    train(task, cfg);
    FAIL() << "expected divergence";
  } catch (const DivergedError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDiverged);
    EXPECT_GE(e.epoch(), 1);
    EXPECT_LE(e.epoch(), 10);
  }
}

TEST(Train, BatchLargerThanDatasetIsOneFullBatch) {
  const BinaryTask task = toy_task(40, 20, 5);
  TrainConfig full{3, 1e-2, 3, 1000, 2};
  TrainConfig exact{3, 1e-2, 3, 40, 2};
  EXPECT_TRUE(train(task, full).model == train(task, exact).model);
}

TEST(Train, RealZeroOneLossFallsForEverySeed) {
  MLPLAB_REQUIRE_MNIST();
  const auto& m = testing::cached_mnist();
  const BinaryTask task = build_binary_task(m.train, m.test, {0, 1});
  for (std::uint64_t seed : {0, 1, 2}) {
    const TrainResult r = train(task, TrainConfig{4, 3e-2, 100, 64, seed});
    EXPECT_LT(r.history.back().train_loss, r.history.front().train_loss) << "seed " << seed;
    EXPECT_TRUE(r.model.all_finite());
  }
}

}  // namespace
}  // namespace mlplab
