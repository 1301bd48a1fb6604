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

#ifndef MLPLAB_TRAIN_HPP_
#define MLPLAB_TRAIN_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "mlplab/mlp.hpp"
#include "mlplab/mnist.hpp"

namespace mlplab {

struct TrainConfig {
  Eigen::Index hidden_size = 24;
  double lr = 3e-2;
  int epochs = 100;
  int batch_size = 64;
  std::uint64_t seed = 0;

  void validate() const;
};

struct EpochRecord {
  int epoch = 0;  // 1-based
  double train_loss = 0;
  double val_loss = 0;
  double val_f1 = 0;
  double val_auc = 0;

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct TrainResult {
  MlpD model;
  std::vector<EpochRecord> history;
};

struct Evaluation {
  double loss = 0;
  double f1 = 0;
  double auc = 0;
};

Evaluation evaluate(const MlpD& model, const FeatureMatrix& x, const Eigen::VectorXd& y);

/// Plain mini-batch SGD. Rows are reshuffled every epoch from a stream seeded
/// by cfg.seed; the initial weights come from init_mlp(cfg.hidden_size, cfg.seed).
/// Throws DivergedError when any parameter becomes non-finite.
TrainResult train(const BinaryTask& task, const TrainConfig& cfg);

/// Same loop starting from given weights.
TrainResult train_from(MlpD model, const BinaryTask& task, const TrainConfig& cfg);

}  // namespace mlplab

#endif  // MLPLAB_TRAIN_HPP_
