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

// mlplab: command-line entry point for the experiment pipeline.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mlplab/errors.hpp"
#include "mlplab/fetch.hpp"
#include "mlplab/lab/csv.hpp"
#include "mlplab/lab/plan.hpp"
#include "mlplab/lab/report.hpp"
#include "mlplab/lab/runner.hpp"

namespace {

using mlplab::ErrorCode;
using mlplab::lab::ExperimentPlan;
using mlplab::lab::Lab;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitFailedCells = 3;

struct Flags {
  std::string config;
  std::optional<std::string> data_dir;
  std::optional<std::string> out_dir;
  std::vector<int> seeds;
  std::optional<int> workers;
  std::vector<std::string> pairs;
  std::vector<int> hidden_sizes;
  std::vector<double> lrs;
  std::optional<int> epochs;
  std::optional<std::uint64_t> master_seed;
  std::optional<std::string> source_url;
  std::string import_dir;
};

ExperimentPlan build_plan(const Flags& f) {
  ExperimentPlan plan;
  if (!f.config.empty()) plan = mlplab::lab::load_plan(f.config, plan);
  if (f.data_dir) plan.data_dir = *f.data_dir;
  if (f.out_dir) plan.out_dir = *f.out_dir;
  if (!f.seeds.empty()) plan.seeds = f.seeds;
  if (f.workers) plan.workers = *f.workers;
  if (!f.pairs.empty()) {
    plan.pairs.clear();
    for (const auto& p : f.pairs) plan.pairs.push_back(mlplab::parse_digit_pair(p));
  }
  if (!f.hidden_sizes.empty()) plan.hidden_sizes = f.hidden_sizes;
  if (!f.lrs.empty()) plan.learning_rates = f.lrs;
  if (f.epochs) plan.epochs = *f.epochs;
  if (f.master_seed) plan.master_seed = *f.master_seed;
  if (f.source_url) plan.source_url = *f.source_url;
  plan.validate();
  return plan;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:
    case ErrorCode::kInvalidArgument:
      return kExitConfig;
    default:
      return kExitData;
  }
}

void print_sweep(const char* stage, const mlplab::lab::SweepResult& r) {
  using mlplab::lab::format_number;
  std::printf("%s: %zu runs\n", stage, r.runs.size());
  for (const auto& s : r.summary) {
    std::printf("  pair %s  H=%-3d lr=%-7s best F1 %s +- %s  (%d ok)\n",
                mlplab::to_string(s.pair).c_str(), s.hidden, format_number(s.lr).c_str(),
                format_number(s.best_f1.mean).c_str(), format_number(s.best_f1.std).c_str(), s.n_ok);
  }
}

int run_stage(const std::string& stage, const Flags& flags) {
  const ExperimentPlan plan = build_plan(flags);

  if (stage == "fetch") {
    mlplab::FetchOptions options;
    options.cache_dir = plan.data_dir;
    if (!plan.source_url.empty()) options.source_url = plan.source_url;
    if (!flags.import_dir.empty()) {
      for (const auto& p : mlplab::import_mnist_files(options, flags.import_dir)) {
        std::printf("imported %s\n", p.string().c_str());
      }
    }
    for (const auto& entry : options.manifest) {
      mlplab::fetch_verified(options, entry);
      std::printf("ok %s\n", mlplab::mnist_cache_path(options.cache_dir, entry.filename).string().c_str());
    }
    return kExitOk;
  }
  if (stage == "report") {
    for (const auto& p : mlplab::lab::render_report(plan.out_dir)) {
      std::printf("wrote %s\n", (plan.out_dir / p).string().c_str());
    }
    return kExitOk;
  }

  Lab lab(plan);
  const bool all = stage == "all";
  if (all || stage == "grid") print_sweep("grid", lab.run_grid());
  if (all || stage == "capacity") print_sweep("capacity", lab.run_capacity());
  if (all) {
    // Later stages read checkpoints that the two sweeps may not cover.
    for (const auto& keys : {lab.robustness_cells(), lab.audit_cells(), lab.interp_cells()}) {
      lab.train_cells(keys);
    }
  }
  if (all || stage == "prune") {
    const auto rows = lab.run_prune_sweep();
    std::printf("prune: %zu rows -> %s\n", rows.size(), (plan.out_dir / "prune").string().c_str());
  }
  if (all || stage == "robustness") {
    const auto r = lab.run_robustness();
    for (const auto& s : r.summary) {
      std::printf("  %-9s %-4s H=%-3d F1 %.4f +- %.4f\n", s.kind.c_str(),
                  mlplab::lab::format_number(s.param).c_str(), s.hidden, s.f1.mean, s.f1.std);
    }
  }
  if (all || stage == "dead-neurons") {
    for (const auto& r : lab.run_dead_neuron_audit()) {
      std::printf("  pair %s H=%-3d seed %d: dead before %ld, after %ld\n",
                  mlplab::to_string(r.pair).c_str(), r.hidden, r.seed,
                  static_cast<long>(r.dead_before), static_cast<long>(r.dead_after));
    }
  }
  if (all || stage == "interp") {
    const auto r = lab.run_interpretability();
    for (const auto& e : r.exemplars) {
      std::printf("  seed %d %-16s idx %ld cosine %.3f overlap %.3f\n", e.seed, e.name.c_str(),
                  static_cast<long>(e.val_index), e.cosine, e.foreground_overlap);
    }
    for (const auto& e : r.embeddings) {
      std::printf("  seed %d t-SNE %-6s KL %.4f -> %.4f centroid acc %.3f\n", e.seed,
                  e.model.c_str(), e.kl_initial, e.kl_final, e.centroid_accuracy);
    }
    for (const auto& note : r.notes) std::printf("  note: %s\n", note.c_str());
  }
  if (all) mlplab::lab::render_report(plan.out_dir);

  if (lab.failed_cells() > 0) {
    std::fprintf(stderr, "%zu cell(s) diverged or failed; see %s\n", lab.failed_cells(),
                 lab.manifest().path().string().c_str());
    return kExitFailedCells;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity, pruning and robustness experiments for small MNIST MLPs"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "JSON plan file; flags override its values")
        ->check(CLI::ExistingFile);
    sub->add_option("--data-dir", flags.data_dir, "MNIST cache directory");
    sub->add_option("--out-dir", flags.out_dir, "run directory");
    sub->add_option("--seeds", flags.seeds, "seed indices, e.g. 0,1,2")->delimiter(',');
    sub->add_option("--workers", flags.workers, "parallel training cells");
    sub->add_option("--pairs", flags.pairs, "digit pairs, e.g. 4-9,0-1")->delimiter(',');
    sub->add_option("--hidden-sizes", flags.hidden_sizes, "hidden widths")->delimiter(',');
    sub->add_option("--lrs", flags.lrs, "learning rates")->delimiter(',');
    sub->add_option("--epochs", flags.epochs, "training epochs per cell");
    sub->add_option("--master-seed", flags.master_seed, "root of every derived seed");
    sub->add_option("--source-url", flags.source_url, "MNIST mirror base URL");
  };

  const std::vector<std::pair<std::string, std::string>> stages = {
      {"fetch", "download and verify MNIST"},
      {"grid", "learning-rate x hidden-size grid on the tuning pair"},
      {"capacity", "hidden-size sweep on every pair"},
      {"prune", "one-shot magnitude pruning of trained models"},
      {"robustness", "Gaussian noise and occlusion sweep"},
      {"dead-neurons", "dead ReLU audit before and after pruning"},
      {"interp", "saliency maps and t-SNE embeddings"},
      {"report", "render SVG charts from stage summaries"},
      {"all", "every stage in order"}};
  std::string chosen;
  for (const auto& [name, help] : stages) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    if (name == "fetch") {
      sub->add_option("--import", flags.import_dir,
                      "copy IDX files (raw or gzipped) from a local directory into the cache")
          ->check(CLI::ExistingDirectory);
    }
    sub->callback([&chosen, name = name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    return run_stage(chosen, flags);
  } catch (const mlplab::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
}
