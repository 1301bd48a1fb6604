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

#ifndef MLPLAB_LAB_PLAN_HPP_
#define MLPLAB_LAB_PLAN_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mlplab/mnist.hpp"
#include "mlplab/tsne.hpp"

namespace mlplab::lab {

struct PairSize {
  DigitPair pair;
  int hidden = 0;

  friend bool operator==(const PairSize&, const PairSize&) = default;
};

// Everything an experiment run depends on. Defaults reproduce the full study.
struct ExperimentPlan {
  std::vector<DigitPair> pairs{kStandardPairs.begin(), kStandardPairs.end()};
  std::vector<int> hidden_sizes = {2, 4, 6, 8, 10, 12, 16, 24, 32, 48, 64};
  std::vector<double> learning_rates = {1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2};
  std::vector<int> seeds = {0, 1, 2};
  int epochs = 100;
  int batch_size = 64;
  std::uint64_t master_seed = 0;

  // Learning rate of every stage except the grid search.
  double main_lr = 3e-2;
  DigitPair grid_pair{4, 9};

  std::vector<double> sparsity_levels = {0.0, 0.50, 0.80, 0.90, 0.95, 0.99};

  DigitPair robustness_pair{4, 9};
  std::vector<int> robustness_hidden = {24, 48, 64};
  std::vector<double> gaussian_sigmas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  int occlusion_patch = 7;
  std::vector<int> corruption_seeds = {0, 1, 2};

  std::vector<PairSize> dead_neuron_targets = {{{0, 1}, 12}, {{3, 8}, 16}, {{4, 9}, 24}};
  double audit_prune_prob = 0.95;

  PairSize interp_target{{4, 9}, 24};
  double interp_prune_prob = 0.95;
  double saliency_epsilon = 0.01;
  TsneConfig tsne;

  std::filesystem::path out_dir = "runs";
  std::filesystem::path data_dir = "data";
  std::string source_url;  // empty: library default mirror
  int workers = 1;

  /// Throws Error{kConfigError}.
  void validate() const;
};

std::string plan_to_json(const ExperimentPlan& plan);
/// Fields absent from the JSON keep the values already in `base`.
ExperimentPlan plan_from_json(const std::string& text, ExperimentPlan base = {});
ExperimentPlan load_plan(const std::filesystem::path& path, ExperimentPlan base = {});

/// Stable 64-bit stream seed for one training cell; independent of which
/// other cells exist.
std::uint64_t derive_seed(std::uint64_t master, DigitPair pair, int hidden, double lr, int seed_index);
/// Seed of one corruption realization, shared by every model it is applied to.
std::uint64_t derive_corruption_seed(std::uint64_t master, const std::string& kind, double param,
                                     int corrupt_index);

}  // namespace mlplab::lab

#endif  // MLPLAB_LAB_PLAN_HPP_
