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

// Experiment orchestration. Every stage writes flat CSV files under
// `<out_dir>/<stage>/`; trained models live in `<out_dir>/cells/` and are
// shared between stages. `<out_dir>/manifest.json` records finished cells so
// that rerunning a plan skips them.

#ifndef MLPLAB_LAB_RUNNER_HPP_
#define MLPLAB_LAB_RUNNER_HPP_

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mlplab/fetch.hpp"
#include "mlplab/lab/csv.hpp"
#include "mlplab/lab/manifest.hpp"
#include "mlplab/lab/plan.hpp"
#include "mlplab/metrics.hpp"
#include "mlplab/saliency.hpp"
#include "mlplab/train.hpp"

namespace mlplab::lab {

// One training run: a (pair, hidden, lr, seed index) coordinate.
struct CellKey {
  DigitPair pair;
  int hidden = 0;
  double lr = 0;
  int seed = 0;

  friend bool operator==(const CellKey&, const CellKey&) = default;
};

enum class CellStatus { kOk, kDiverged, kFailed };

std::string to_string(CellStatus status);

struct RunRecord {
  CellKey key;
  CellStatus status = CellStatus::kOk;
  std::vector<EpochRecord> history;
  double best_f1 = 0;  // max over the epoch series
  double final_f1 = 0;
  double final_auc = 0;
  double final_loss = 0;
  double wall_time = 0;
  std::string message;
};

// Seed-aggregated scores of one (pair, hidden, lr) group. Only cells that
// trained successfully contribute.
struct RunSummary {
  DigitPair pair;
  int hidden = 0;
  double lr = 0;
  int n_ok = 0;
  MeanStd best_f1;
  MeanStd final_f1;
  MeanStd final_loss;
};

struct SweepResult {
  std::vector<RunRecord> runs;
  std::vector<RunSummary> summary;

  const RunSummary* find(DigitPair pair, int hidden, double lr) const;
};

struct RobustSummary {
  std::string kind;
  double param = 0;
  int hidden = 0;
  MeanStd f1;
  int n = 0;
};

struct RobustnessResult {
  std::vector<RobustRow> rows;
  std::vector<RobustSummary> summary;
  std::vector<std::pair<int, double>> clean_f1;  // (hidden, mean clean F1)

  const RobustSummary* find(const std::string& kind, double param, int hidden) const;
};

struct DeadNeuronRow {
  DigitPair pair;
  int hidden = 0;
  int seed = 0;
  Eigen::Index dead_before = 0;
  Eigen::Index dead_after = 0;
};

struct SaliencyExemplar {
  int seed = 0;
  std::string name;  // e.g. "correct_4"
  Eigen::Index val_index = -1;
  int digit = 0;
  double p_dense = 0;
  double p_pruned = 0;
  double cosine = 0;              // dense vs pruned map
  double foreground_overlap = 0;  // top-decile dense saliency on pixels > 0.2
};

struct EmbeddingSummary {
  int seed = 0;
  std::string model;  // "dense" | "pruned"
  Eigen::Index n = 0;
  double kl_initial = 0;
  double kl_final = 0;
  double centroid_accuracy = 0;
};

struct InterpResult {
  std::vector<SaliencyExemplar> exemplars;
  std::vector<EmbeddingSummary> embeddings;
  std::vector<std::string> notes;  // e.g. NoMisclassifiedSample per seed
};

/// Share of the top-decile (79 highest) saliency pixels whose input
/// intensity exceeds `threshold`.
double foreground_overlap(const SaliencyGrid& saliency,
                          const Eigen::Ref<const Eigen::RowVectorXd>& image,
                          double threshold = 0.2);

/// Runs `fn(i)` for i in [0, n) on up to `workers` threads. The first
/// exception is rethrown after all workers stop.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

class Lab {
 public:
  explicit Lab(ExperimentPlan plan);

  const ExperimentPlan& plan() const { return plan_; }
  const Manifest& manifest() const { return manifest_; }

  /// Loads (and if needed downloads) MNIST once per Lab.
  const MnistSplits& data();
  const BinaryTask& task(DigitPair pair);

  std::string cell_id(const CellKey& key) const;
  std::filesystem::path checkpoint_path(const CellKey& key) const;

  /// Trains every key not already complete in the manifest, in parallel.
  /// Results come back in `keys` order regardless of worker count.
  std::vector<RunRecord> train_cells(const std::vector<CellKey>& keys);

  /// Throws kMissingCheckpoint when the cell has not been trained.
  MlpD load_model(const CellKey& key) const;

  std::vector<CellKey> grid_cells() const;
  std::vector<CellKey> capacity_cells() const;
  std::vector<CellKey> prune_cells() const;
  std::vector<CellKey> robustness_cells() const;
  std::vector<CellKey> audit_cells() const;
  std::vector<CellKey> interp_cells() const;

  SweepResult run_grid();
  SweepResult run_capacity();
  std::vector<PruneRow> run_prune_sweep();
  RobustnessResult run_robustness();
  std::vector<DeadNeuronRow> run_dead_neuron_audit();
  InterpResult run_interpretability();

  /// Cells that diverged or failed during this Lab's lifetime (including
  /// ones loaded from the manifest).
  std::size_t failed_cells() const { return failed_cells_; }

 private:
  RunRecord run_cell(const CellKey& key);
  std::optional<RunRecord> load_cell(const CellKey& key) const;
  void record_stage(const std::string& name, std::vector<std::string> outputs);
  SweepResult summarize(std::vector<RunRecord> runs, const std::string& stage);

  ExperimentPlan plan_;
  Manifest manifest_;
  std::mutex mutex_;  // guards manifest_, tasks_, data_, failed_cells_
  std::unique_ptr<MnistSplits> data_;
  std::vector<std::pair<DigitPair, std::unique_ptr<BinaryTask>>> tasks_;
  std::size_t failed_cells_ = 0;
};

}  // namespace mlplab::lab

#endif  // MLPLAB_LAB_RUNNER_HPP_
