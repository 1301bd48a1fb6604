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

#include "mlplab/metrics.hpp"

namespace mlplab {

double percent_change(double before, double after) {
  return before > 0 ? 100.0 * (after - before) / before : 0.0;
}

std::vector<PruneReport> prune_sweep(const MlpD& model, const BinaryTask& task,
                                     std::span<const double> levels) {
  const double f1_before = f1(ScoredBatch(predict(model, task.val_x), task.val_y));
  const Eigen::Index dead_before = dead_neurons(model, task.val_x).count();
  std::vector<PruneReport> reports;
  reports.reserve(levels.size());
  for (double p : levels) {
    const MlpD pruned = magnitude_prune(model, p);
    PruneReport r;
    r.prune_prob = p;
    r.nnz_w1_before = count_nonzero(model.w1);
    r.nnz_w2_before = count_nonzero(model.w2);
    r.nnz_w1_after = count_nonzero(pruned.w1);
    r.nnz_w2_after = count_nonzero(pruned.w2);
    r.f1_before = f1_before;
    r.f1_after = f1(ScoredBatch(predict(pruned, task.val_x), task.val_y));
    r.delta_pct = percent_change(r.f1_before, r.f1_after);
    r.dead_before = dead_before;
    r.dead_after = dead_neurons(pruned, task.val_x).count();
    reports.push_back(r);
  }
  return reports;
}

}  // namespace mlplab
