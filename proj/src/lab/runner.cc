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

#include "mlplab/lab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "mlplab/checkpoint.hpp"
#include "mlplab/lab/pgm.hpp"
#include "mlplab/pruning.hpp"
#include "mlplab/saliency.hpp"
#include "mlplab/tsne.hpp"

namespace mlplab::lab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

MeanStd aggregate_or_nan(const std::vector<double>& values) {
  return values.empty() ? MeanStd{kNaN, kNaN} : aggregate(values);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  write_file_atomic(path, std::span<const std::uint8_t>(
                              reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::vector<RunRow> rows_of(const RunRecord& r) {
  std::vector<RunRow> rows;
  for (const auto& e : r.history) {
    rows.push_back(RunRow{r.key.pair, r.key.hidden, r.key.lr, r.key.seed, e.epoch, e.train_loss,
                          e.val_loss, e.val_f1, e.val_auc});
  }
  return rows;
}

void finish_record(RunRecord& r) {
  if (r.history.empty()) return;
  r.best_f1 = 0;
  for (const auto& e : r.history) r.best_f1 = std::max(r.best_f1, e.val_f1);
  r.final_f1 = r.history.back().val_f1;
  r.final_auc = r.history.back().val_auc;
  r.final_loss = r.history.back().val_loss;
}

}  // namespace

std::string to_string(CellStatus status) {
  switch (status) {
    case CellStatus::kOk: return "ok";
    case CellStatus::kDiverged: return "diverged";
    case CellStatus::kFailed: return "failed";
  }
  return "failed";
}

const RunSummary* SweepResult::find(DigitPair pair, int hidden, double lr) const {
  for (const auto& s : summary) {
    if (s.pair == pair && s.hidden == hidden && s.lr == lr) return &s;
  }
  return nullptr;
}

const RobustSummary* RobustnessResult::find(const std::string& kind, double param, int hidden) const {
  for (const auto& s : summary) {
    if (s.kind == kind && s.param == param && s.hidden == hidden) return &s;
  }
  return nullptr;
}

double foreground_overlap(const SaliencyGrid& saliency,
                          const Eigen::Ref<const Eigen::RowVectorXd>& image, double threshold) {
  constexpr int kTop = (kImagePixels + 9) / 10;
  std::vector<int> order(kImagePixels);
  std::iota(order.begin(), order.end(), 0);
  const double* s = saliency.data();  // row-major, matches pixel order
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return s[a] > s[b]; });
  int hits = 0;
  for (int k = 0; k < kTop; ++k) hits += image(order[static_cast<std::size_t>(k)]) > threshold;
  return static_cast<double>(hits) / kTop;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

Lab::Lab(ExperimentPlan plan) : plan_(std::move(plan)), manifest_(plan_.out_dir) {
  plan_.validate();
  std::filesystem::create_directories(plan_.out_dir);
  manifest_ = Manifest::open(plan_.out_dir);
  manifest_.set_plan(plan_to_json(plan_));
  manifest_.set_dataset(pinned_mnist_manifest());
}

const MnistSplits& Lab::data() {
  std::lock_guard lock(mutex_);
  if (!data_) {
    FetchOptions options;
    options.cache_dir = plan_.data_dir;
    if (!plan_.source_url.empty()) options.source_url = plan_.source_url;
    data_ = std::make_unique<MnistSplits>(fetch_mnist(options));
  }
  return *data_;
}

const BinaryTask& Lab::task(DigitPair pair) {
  {
    std::lock_guard lock(mutex_);
    for (const auto& [p, t] : tasks_) {
      if (p == pair) return *t;
    }
  }
  const MnistSplits& splits = data();
  auto built = std::make_unique<BinaryTask>(build_binary_task(splits.train, splits.test, pair));
  std::lock_guard lock(mutex_);
  for (const auto& [p, t] : tasks_) {
    if (p == pair) return *t;
  }
  tasks_.emplace_back(pair, std::move(built));
  return *tasks_.back().second;
}

std::string Lab::cell_id(const CellKey& key) const {
  return to_string(key.pair) + "_h" + std::to_string(key.hidden) + "_lr" + format_number(key.lr) +
         "_s" + std::to_string(key.seed) + "_e" + std::to_string(plan_.epochs) + "_b" +
         std::to_string(plan_.batch_size) + "_m" + std::to_string(plan_.master_seed);
}

std::filesystem::path Lab::checkpoint_path(const CellKey& key) const {
  return plan_.out_dir / "cells" / (cell_id(key) + ".mlp");
}

std::optional<RunRecord> Lab::load_cell(const CellKey& key) const {
  const std::string id = cell_id(key);
  if (!manifest_.cell_complete(id)) return std::nullopt;
  const CellEntry entry = *manifest_.cell(id);
  RunRecord r;
  r.key = key;
  r.status = entry.status == "ok"         ? CellStatus::kOk
             : entry.status == "diverged" ? CellStatus::kDiverged
                                          : CellStatus::kFailed;
  r.wall_time = entry.wall_time;
  r.message = entry.message;
  if (!entry.epochs_csv.empty()) {
    for (const auto& row : run_rows(read_csv(plan_.out_dir / entry.epochs_csv, run_columns()))) {
      r.history.push_back({row.epoch, row.train_loss, row.val_loss, row.val_f1, row.val_auc});
    }
  }
  finish_record(r);
  return r;
}

RunRecord Lab::run_cell(const CellKey& key) {
  {
    std::lock_guard lock(mutex_);
    if (auto done = load_cell(key)) {
      if (done->status != CellStatus::kOk) ++failed_cells_;
      return *done;
    }
  }
  const std::string id = cell_id(key);
  RunRecord r;
  r.key = key;
  CellEntry entry;
  const auto start = std::chrono::steady_clock::now();
  try {
    const BinaryTask& t = task(key.pair);
    TrainConfig cfg;
    cfg.hidden_size = key.hidden;
    cfg.lr = key.lr;
    cfg.epochs = plan_.epochs;
    cfg.batch_size = plan_.batch_size;
    cfg.seed = derive_seed(plan_.master_seed, key.pair, key.hidden, key.lr, key.seed);
    TrainResult result = train(t, cfg);
    r.history = std::move(result.history);
    save_checkpoint_file(result.model, checkpoint_path(key));
    entry.status = "ok";
    entry.checkpoint = "cells/" + id + ".mlp";
  } catch (const DivergedError& e) {
    r.status = CellStatus::kDiverged;
    r.message = e.what();
    entry.status = "diverged";
  } catch (const Error& e) {
    // Data and I/O problems are not cell-local; let them abort the stage.
    if (e.code() != ErrorCode::kInvalidArgument && e.code() != ErrorCode::kShapeMismatch) throw;
    r.status = CellStatus::kFailed;
    r.message = e.what();
    entry.status = "failed";
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  finish_record(r);
  if (!r.history.empty()) {
    entry.epochs_csv = "cells/" + id + ".csv";
    write_csv(plan_.out_dir / entry.epochs_csv, to_table(rows_of(r)));
  }
  entry.wall_time = r.wall_time;
  entry.completed_at = utc_timestamp();
  entry.message = r.message;

  std::lock_guard lock(mutex_);
  if (r.status != CellStatus::kOk) ++failed_cells_;
  manifest_.record_cell(id, entry);
  manifest_.save();
  return r;
}

std::vector<RunRecord> Lab::train_cells(const std::vector<CellKey>& keys) {
  std::vector<RunRecord> out(keys.size());
  parallel_for(keys.size(), plan_.workers, [&](std::size_t i) { out[i] = run_cell(keys[i]); });
  return out;
}

MlpD Lab::load_model(const CellKey& key) const {
  const auto path = checkpoint_path(key);
  require(std::filesystem::exists(path), ErrorCode::kMissingCheckpoint,
          "no trained model for " + cell_id(key) + " (expected " + path.string() + ")");
  return load_checkpoint_file(path);
}

std::vector<CellKey> Lab::grid_cells() const {
  std::vector<CellKey> keys;
  for (double lr : plan_.learning_rates) {
    for (int h : plan_.hidden_sizes) {
      for (int s : plan_.seeds) keys.push_back({plan_.grid_pair, h, lr, s});
    }
  }
  return keys;
}

std::vector<CellKey> Lab::capacity_cells() const {
  std::vector<CellKey> keys;
  for (const auto& pair : plan_.pairs) {
    for (int h : plan_.hidden_sizes) {
      for (int s : plan_.seeds) keys.push_back({pair, h, plan_.main_lr, s});
    }
  }
  return keys;
}

std::vector<CellKey> Lab::prune_cells() const { return capacity_cells(); }

std::vector<CellKey> Lab::robustness_cells() const {
  std::vector<CellKey> keys;
  for (int h : plan_.robustness_hidden) {
    for (int s : plan_.seeds) keys.push_back({plan_.robustness_pair, h, plan_.main_lr, s});
  }
  return keys;
}

std::vector<CellKey> Lab::audit_cells() const {
  std::vector<CellKey> keys;
  for (const auto& t : plan_.dead_neuron_targets) {
    for (int s : plan_.seeds) keys.push_back({t.pair, t.hidden, plan_.main_lr, s});
  }
  return keys;
}

std::vector<CellKey> Lab::interp_cells() const {
  std::vector<CellKey> keys;
  for (int s : plan_.seeds) {
    keys.push_back({plan_.interp_target.pair, plan_.interp_target.hidden, plan_.main_lr, s});
  }
  return keys;
}

void Lab::record_stage(const std::string& name, std::vector<std::string> outputs) {
  std::lock_guard lock(mutex_);
  manifest_.record_stage(name, std::move(outputs));
  manifest_.save();
}

SweepResult Lab::summarize(std::vector<RunRecord> runs, const std::string& stage) {
  SweepResult result;
  std::vector<RunRow> all_rows;
  for (const auto& r : runs) {
    auto rows = rows_of(r);
    all_rows.insert(all_rows.end(), rows.begin(), rows.end());
  }
  // Group by (pair, hidden, lr) in first-appearance order.
  std::vector<CellKey> groups;
  for (const auto& r : runs) {
    CellKey g{r.key.pair, r.key.hidden, r.key.lr, 0};
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(g);
  }
  CsvTable summary{{"pair", "hidden", "lr", "n_ok", "mean_best_f1", "std_best_f1", "mean_final_f1",
                    "std_final_f1", "mean_final_loss", "std_final_loss"},
                   {}};
  CsvTable curves{{"pair", "hidden", "lr", "epoch", "mean_val_f1", "std_val_f1", "mean_val_loss",
                   "std_val_loss", "mean_train_loss", "std_train_loss"},
                  {}};
  for (const auto& g : groups) {
    std::vector<double> best, final_f1, final_loss;
    std::vector<const RunRecord*> ok;
    for (const auto& r : runs) {
      if (r.key.pair == g.pair && r.key.hidden == g.hidden && r.key.lr == g.lr &&
          r.status == CellStatus::kOk) {
        ok.push_back(&r);
        best.push_back(r.best_f1);
        final_f1.push_back(r.final_f1);
        final_loss.push_back(r.final_loss);
      }
    }
    RunSummary s{g.pair, g.hidden, g.lr, static_cast<int>(ok.size()), aggregate_or_nan(best),
                 aggregate_or_nan(final_f1), aggregate_or_nan(final_loss)};
    result.summary.push_back(s);
    summary.rows.push_back({to_string(g.pair), std::to_string(g.hidden), format_number(g.lr),
                            std::to_string(s.n_ok), format_number(s.best_f1.mean),
                            format_number(s.best_f1.std), format_number(s.final_f1.mean),
                            format_number(s.final_f1.std), format_number(s.final_loss.mean),
                            format_number(s.final_loss.std)});
    if (ok.empty()) continue;
    const std::size_t epochs = ok.front()->history.size();
    for (std::size_t e = 0; e < epochs; ++e) {
      std::vector<double> f1s, vloss, tloss;
      for (const auto* r : ok) {
        f1s.push_back(r->history[e].val_f1);
        vloss.push_back(r->history[e].val_loss);
        tloss.push_back(r->history[e].train_loss);
      }
      const auto a = aggregate(f1s), b = aggregate(vloss), c = aggregate(tloss);
      curves.rows.push_back({to_string(g.pair), std::to_string(g.hidden), format_number(g.lr),
                             std::to_string(e + 1), format_number(a.mean), format_number(a.std),
                             format_number(b.mean), format_number(b.std), format_number(c.mean),
                             format_number(c.std)});
    }
  }
  const auto dir = plan_.out_dir / stage;
  write_csv(dir / "runs.csv", to_table(all_rows));
  write_csv(dir / "summary.csv", summary);
  write_csv(dir / "curves.csv", curves);
  result.runs = std::move(runs);
  return result;
}

SweepResult Lab::run_grid() {
  SweepResult result = summarize(train_cells(grid_cells()), "grid");
  CsvTable heatmap;
  heatmap.header.push_back("lr");
  for (int h : plan_.hidden_sizes) heatmap.header.push_back("h" + std::to_string(h));
  for (double lr : plan_.learning_rates) {
    std::vector<std::string> row{format_number(lr)};
    for (int h : plan_.hidden_sizes) {
      const auto* s = result.find(plan_.grid_pair, h, lr);
      row.push_back(format_number(s ? s->best_f1.mean : kNaN));
    }
    heatmap.rows.push_back(std::move(row));
  }
  write_csv(plan_.out_dir / "grid" / "heatmap.csv", heatmap);
  record_stage("grid", {"grid/runs.csv", "grid/summary.csv", "grid/curves.csv", "grid/heatmap.csv"});
  return result;
}

SweepResult Lab::run_capacity() {
  SweepResult result = summarize(train_cells(capacity_cells()), "capacity");
  record_stage("capacity", {"capacity/runs.csv", "capacity/summary.csv", "capacity/curves.csv"});
  return result;
}

std::vector<PruneRow> Lab::run_prune_sweep() {
  const auto keys = prune_cells();
  std::vector<std::vector<PruneRow>> per_cell(keys.size());
  parallel_for(keys.size(), plan_.workers, [&](std::size_t i) {
    const CellKey& key = keys[i];
    const MlpD model = load_model(key);
    for (const auto& r : prune_sweep(model, task(key.pair), plan_.sparsity_levels)) {
      per_cell[i].push_back(PruneRow{key.pair, key.hidden, key.seed, r.prune_prob, r.f1_before,
                                     r.f1_after, r.delta_pct, r.nnz_w1_after, r.nnz_w2_after,
                                     r.dead_before, r.dead_after});
    }
  });
  std::vector<PruneRow> rows;
  for (auto& c : per_cell) rows.insert(rows.end(), c.begin(), c.end());

  CsvTable summary{{"pair", "hidden", "prune_prob", "n", "mean_delta_pct", "std_delta_pct",
                    "mean_f1_after", "std_f1_after"},
                   {}};
  for (const auto& pair : plan_.pairs) {
    for (int h : plan_.hidden_sizes) {
      for (double p : plan_.sparsity_levels) {
        std::vector<double> delta, after;
        for (const auto& r : rows) {
          if (r.pair == pair && r.hidden == h && r.prune_prob == p) {
            delta.push_back(r.delta_pct);
            after.push_back(r.f1_after);
          }
        }
        if (delta.empty()) continue;
        const auto d = aggregate(delta), a = aggregate(after);
        summary.rows.push_back({to_string(pair), std::to_string(h), format_number(p),
                                std::to_string(delta.size()), format_number(d.mean),
                                format_number(d.std), format_number(a.mean), format_number(a.std)});
      }
    }
  }
  write_csv(plan_.out_dir / "prune" / "prune.csv", to_table(rows));
  write_csv(plan_.out_dir / "prune" / "summary.csv", summary);
  record_stage("prune", {"prune/prune.csv", "prune/summary.csv"});
  return rows;
}

RobustnessResult Lab::run_robustness() {
  const BinaryTask& t = task(plan_.robustness_pair);
  const auto keys = robustness_cells();
  std::vector<MlpD> models;
  for (const auto& k : keys) models.push_back(load_model(k));

  struct Corruption {
    std::string kind;
    double param;
    int seed_index;
  };
  std::vector<Corruption> corruptions;
  for (double sigma : plan_.gaussian_sigmas) {
    for (int c : plan_.corruption_seeds) corruptions.push_back({"gaussian", sigma, c});
  }
  for (int c : plan_.corruption_seeds) {
    corruptions.push_back({"occlusion", static_cast<double>(plan_.occlusion_patch), c});
  }

  // scores[corruption][model]
  std::vector<std::vector<double>> scores(corruptions.size(), std::vector<double>(keys.size()));
  parallel_for(corruptions.size(), plan_.workers, [&](std::size_t ci) {
    const auto& c = corruptions[ci];
    CorruptionSpec spec;
    spec.kind = c.kind == "gaussian" ? CorruptionKind::kGaussian : CorruptionKind::kOcclusion;
    spec.sigma = c.param;
    spec.patch = static_cast<int>(c.param);
    spec.seed = derive_corruption_seed(plan_.master_seed, c.kind, c.param, c.seed_index);
    const FeatureMatrix x = apply_corruption(t.val_x, spec);
    for (std::size_t m = 0; m < models.size(); ++m) {
      scores[ci][m] = f1(ScoredBatch(predict(models[m], x), t.val_y));
    }
  });

  RobustnessResult result;
  for (std::size_t m = 0; m < keys.size(); ++m) {
    for (std::size_t ci = 0; ci < corruptions.size(); ++ci) {
      const auto& c = corruptions[ci];
      result.rows.push_back(RobustRow{keys[m].pair, keys[m].hidden, keys[m].seed, c.seed_index,
                                      c.kind, c.param, scores[ci][m]});
    }
  }
  CsvTable summary{{"kind", "param", "hidden", "n", "mean_f1", "std_f1"}, {}};
  auto add_summary = [&](const std::string& kind, double param) {
    for (int h : plan_.robustness_hidden) {
      std::vector<double> values;
      for (const auto& r : result.rows) {
        if (r.kind == kind && r.param == param && r.hidden == h) values.push_back(r.f1);
      }
      const auto agg = aggregate(values);
      result.summary.push_back({kind, param, h, agg, static_cast<int>(values.size())});
      summary.rows.push_back({kind, format_number(param), std::to_string(h),
                              std::to_string(values.size()), format_number(agg.mean),
                              format_number(agg.std)});
    }
  };
  for (double sigma : plan_.gaussian_sigmas) add_summary("gaussian", sigma);
  add_summary("occlusion", static_cast<double>(plan_.occlusion_patch));
  for (int h : plan_.robustness_hidden) {
    std::vector<double> clean;
    for (std::size_t m = 0; m < keys.size(); ++m) {
      if (keys[m].hidden == h) clean.push_back(f1(ScoredBatch(predict(models[m], t.val_x), t.val_y)));
    }
    result.clean_f1.emplace_back(h, aggregate(clean).mean);
  }
  write_csv(plan_.out_dir / "robust" / "robust.csv", to_table(result.rows));
  write_csv(plan_.out_dir / "robust" / "summary.csv", summary);
  record_stage("robustness", {"robust/robust.csv", "robust/summary.csv"});
  return result;
}

std::vector<DeadNeuronRow> Lab::run_dead_neuron_audit() {
  std::vector<DeadNeuronRow> rows;
  CsvTable table{{"pair", "hidden", "seed", "prune_prob", "dead_before", "dead_after"}, {}};
  for (const auto& key : audit_cells()) {
    const MlpD model = load_model(key);
    const BinaryTask& t = task(key.pair);
    const MlpD pruned = magnitude_prune(model, plan_.audit_prune_prob);
    DeadNeuronRow r{key.pair, key.hidden, key.seed, dead_neurons(model, t.val_x).count(),
                    dead_neurons(pruned, t.val_x).count()};
    rows.push_back(r);
    table.rows.push_back({to_string(r.pair), std::to_string(r.hidden), std::to_string(r.seed),
                          format_number(plan_.audit_prune_prob), std::to_string(r.dead_before),
                          std::to_string(r.dead_after)});
  }
  CsvTable summary{{"pair", "hidden", "n_seeds", "seeds_zero_zero", "mean_dead_before",
                    "mean_dead_after"},
                   {}};
  for (const auto& target : plan_.dead_neuron_targets) {
    std::vector<double> before, after;
    int zero_zero = 0;
    for (const auto& r : rows) {
      if (r.pair == target.pair && r.hidden == target.hidden) {
        before.push_back(static_cast<double>(r.dead_before));
        after.push_back(static_cast<double>(r.dead_after));
        zero_zero += r.dead_before == 0 && r.dead_after == 0;
      }
    }
    summary.rows.push_back({to_string(target.pair), std::to_string(target.hidden),
                            std::to_string(before.size()), std::to_string(zero_zero),
                            format_number(aggregate(before).mean),
                            format_number(aggregate(after).mean)});
  }
  write_csv(plan_.out_dir / "dead" / "dead_neurons.csv", table);
  write_csv(plan_.out_dir / "dead" / "summary.csv", summary);
  record_stage("dead-neurons", {"dead/dead_neurons.csv", "dead/summary.csv"});
  return rows;
}

InterpResult Lab::run_interpretability() {
  const PairSize target = plan_.interp_target;
  const BinaryTask& t = task(target.pair);
  const auto keys = interp_cells();
  InterpResult result;
  std::vector<std::string> outputs;
  std::vector<InterpResult> per_seed(keys.size());

  parallel_for(keys.size(), plan_.workers, [&](std::size_t i) {
    const CellKey& key = keys[i];
    InterpResult& out = per_seed[i];
    const MlpD dense = load_model(key);
    const MlpD pruned = magnitude_prune(dense, plan_.interp_prune_prob);
    const Eigen::VectorXd p = predict(dense, t.val_x);
    const std::string seed_dir = "interp/seed" + std::to_string(key.seed);

    struct Wanted {
      std::string name;
      double label;
      bool correct;
    };
    const std::vector<Wanted> wanted = {
        {"correct_" + std::to_string(target.pair.lo), 0.0, true},
        {"correct_" + std::to_string(target.pair.hi), 1.0, true},
        {"misclassified_" + std::to_string(target.pair.lo), 0.0, false}};
    for (const auto& w : wanted) {
      Eigen::Index found = -1;
      for (Eigen::Index r = 0; r < t.val_x.rows() && found < 0; ++r) {
        const bool predicted_hi = p(r) >= kDecisionThreshold;
        const bool is_hi = t.val_y(r) > 0.5;
        if ((t.val_y(r) == w.label) && ((predicted_hi == is_hi) == w.correct)) found = r;
      }
      if (found < 0) {
        out.notes.push_back(std::string(mlplab::to_string(ErrorCode::kNoMisclassifiedSample)) +
                            ": seed " + std::to_string(key.seed) + " has no " + w.name +
                            " validation image");
        continue;
      }
      const Eigen::RowVectorXd image = t.val_x.row(found);
      const SaliencyMap dense_map = saliency_map(dense, image, plan_.saliency_epsilon);
      const SaliencyMap pruned_map = saliency_map(pruned, image, plan_.saliency_epsilon);
      SaliencyExemplar ex;
      ex.seed = key.seed;
      ex.name = w.name;
      ex.val_index = found;
      ex.digit = w.label > 0.5 ? target.pair.hi : target.pair.lo;
      ex.p_dense = dense_map.base_score;
      ex.p_pruned = pruned_map.base_score;
      ex.cosine = cosine_similarity(dense_map.grid, pruned_map.grid);
      ex.foreground_overlap = foreground_overlap(dense_map.grid, image);
      out.exemplars.push_back(ex);
      const auto base = plan_.out_dir / seed_dir;
      write_text(base / (w.name + "_input.pgm"), image_to_pgm(image));
      write_text(base / (w.name + "_dense.pgm"), saliency_to_pgm(dense_map));
      write_text(base / (w.name + "_pruned.pgm"), saliency_to_pgm(pruned_map));
      write_text(base / (w.name + "_dense.csv"), saliency_to_csv(dense_map));
      write_text(base / (w.name + "_pruned.csv"), saliency_to_csv(pruned_map));
      for (const char* suffix : {"_input.pgm", "_dense.pgm", "_pruned.pgm", "_dense.csv", "_pruned.csv"}) {
        out.notes.push_back("output:" + seed_dir + "/" + w.name + suffix);
      }
    }

    TsneConfig cfg = plan_.tsne;
    cfg.seed = derive_seed(plan_.master_seed ^ plan_.tsne.seed, target.pair, target.hidden,
                           plan_.main_lr, key.seed);
    const auto idx = subsample_indices(t.val_x.rows(), cfg.subsample_n, cfg.seed);
    FeatureMatrix sub(static_cast<Eigen::Index>(idx.size()), t.val_x.cols());
    std::vector<int> labels;
    for (std::size_t r = 0; r < idx.size(); ++r) {
      sub.row(static_cast<Eigen::Index>(r)) = t.val_x.row(idx[r]);
      labels.push_back(t.val_y(idx[r]) > 0.5 ? target.pair.hi : target.pair.lo);
    }
    for (const auto& [name, model] : {std::pair<std::string, const MlpD*>{"dense", &dense},
                                      std::pair<std::string, const MlpD*>{"pruned", &pruned}}) {
      const Embedding emb = tsne_embed(hidden_activations(*model, sub), labels, cfg);
      CsvTable table{{"x", "y", "label"}, {}};
      for (Eigen::Index r = 0; r < emb.points.rows(); ++r) {
        table.rows.push_back({format_number(emb.points(r, 0)), format_number(emb.points(r, 1)),
                              std::to_string(emb.labels[static_cast<std::size_t>(r)])});
      }
      const std::string rel = seed_dir + "/tsne_" + name + ".csv";
      write_csv(plan_.out_dir / rel, table);
      out.notes.push_back("output:" + rel);
      out.embeddings.push_back({key.seed, name, emb.points.rows(), emb.kl_initial, emb.kl_final,
                                nearest_centroid_accuracy(emb.points, emb.labels)});
    }
  });

  CsvTable saliency{{"seed", "exemplar", "val_index", "digit", "p_dense", "p_pruned",
                     "cosine_dense_pruned", "foreground_overlap"},
                    {}};
  CsvTable tsne{{"seed", "model", "n", "kl_initial", "kl_final", "centroid_accuracy"}, {}};
  for (auto& s : per_seed) {
    for (const auto& ex : s.exemplars) {
      saliency.rows.push_back({std::to_string(ex.seed), ex.name, std::to_string(ex.val_index),
                               std::to_string(ex.digit), format_number(ex.p_dense),
                               format_number(ex.p_pruned), format_number(ex.cosine),
                               format_number(ex.foreground_overlap)});
      result.exemplars.push_back(ex);
    }
    for (const auto& e : s.embeddings) {
      tsne.rows.push_back({std::to_string(e.seed), e.model, std::to_string(e.n),
                           format_number(e.kl_initial), format_number(e.kl_final),
                           format_number(e.centroid_accuracy)});
      result.embeddings.push_back(e);
    }
    for (const auto& note : s.notes) {
      if (note.rfind("output:", 0) == 0) {
        outputs.push_back(note.substr(7));
      } else {
        result.notes.push_back(note);
      }
    }
  }
  write_csv(plan_.out_dir / "interp" / "saliency_summary.csv", saliency);
  write_csv(plan_.out_dir / "interp" / "tsne_summary.csv", tsne);
  outputs.push_back("interp/saliency_summary.csv");
  outputs.push_back("interp/tsne_summary.csv");
  record_stage("interp", std::move(outputs));
  return result;
}

}  // namespace mlplab::lab
