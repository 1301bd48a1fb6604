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

#include <algorithm>
#include <numeric>
#include <random>

#include "mlplab/metrics.hpp"

namespace mlplab {
namespace {

// Decorrelates the shuffle stream from the weight-init stream.
constexpr std::uint64_t kShuffleSalt = 0x9e3779b97f4a7c15ULL;

}  // namespace

void TrainConfig::validate() const {
  require(hidden_size >= 1, ErrorCode::kInvalidArgument, "hidden_size must be >= 1");
  require(lr >= 0.0 && std::isfinite(lr), ErrorCode::kInvalidArgument, "lr must be finite and >= 0");
  require(epochs >= 1, ErrorCode::kInvalidArgument, "epochs must be >= 1");
  require(batch_size >= 1, ErrorCode::kInvalidArgument, "batch_size must be >= 1");
}

Evaluation evaluate(const MlpD& model, const FeatureMatrix& x, const Eigen::VectorXd& y) {
  const Eigen::VectorXd p = predict(model, x);
  const ScoredBatch batch{p, y};
  return Evaluation{mean_bce(p, y), f1(batch), auc(batch)};
}

TrainResult train(const BinaryTask& task, const TrainConfig& cfg) {
  cfg.validate();
  return train_from(init_mlp(cfg.hidden_size, cfg.seed), task, cfg);
}

TrainResult train_from(MlpD model, const BinaryTask& task, const TrainConfig& cfg) {
  cfg.validate();
  model.check_shape();
  const Eigen::Index n = task.train_x.rows();
  require(n > 0 && task.train_y.size() == n, ErrorCode::kShapeMismatch, "empty or ragged task");

  std::mt19937_64 rng(cfg.seed ^ kShuffleSalt);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});

  const Eigen::Index batch = std::min<Eigen::Index>(cfg.batch_size, n);
  FeatureMatrix bx(batch, task.train_x.cols());
  Eigen::VectorXd by(batch);

  TrainResult result;
  result.history.reserve(static_cast<std::size_t>(cfg.epochs));
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0;
    for (Eigen::Index start = 0; start < n; start += batch) {
      const Eigen::Index m = std::min(batch, n - start);
      for (Eigen::Index r = 0; r < m; ++r) {
        const auto src = order[static_cast<std::size_t>(start + r)];
        bx.row(r) = task.train_x.row(src);
        by(r) = task.train_y(src);
      }
      const auto g = backward(model, bx.topRows(m), by.head(m));
      loss_sum += g.loss * static_cast<double>(m);
      sgd_step(model, g, cfg.lr);
    }
    if (!model.all_finite()) {
      throw DivergedError(epoch, "non-finite parameter after epoch " + std::to_string(epoch));
    }
    const Evaluation val = evaluate(model, task.val_x, task.val_y);
    result.history.push_back(
        EpochRecord{epoch, loss_sum / static_cast<double>(n), val.loss, val.f1, val.auc});
  }
  result.model = std::move(model);
  return result;
}

}  // namespace mlplab
