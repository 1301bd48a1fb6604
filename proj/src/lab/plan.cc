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

#include "mlplab/lab/plan.hpp"

#include <bit>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mlplab/errors.hpp"

namespace mlplab::lab {
namespace {

using nlohmann::json;

void check(bool ok, const std::string& what) { require(ok, ErrorCode::kConfigError, what); }

template <typename T>
void check_nonempty(const std::vector<T>& v, const char* name) {
  check(!v.empty(), std::string(name) + " must not be empty");
}

void check_pair(const DigitPair& p) {
  check(p.lo >= 0 && p.lo <= 9 && p.hi >= 0 && p.hi <= 9 && p.lo != p.hi,
        "invalid digit pair " + to_string(p));
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer over a running combination.
  std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

json pair_json(const DigitPair& p) { return json::array({p.lo, p.hi}); }

DigitPair pair_from(const json& j) {
  if (j.is_string()) return parse_digit_pair(j.get<std::string>());
  check(j.is_array() && j.size() == 2, "digit pair must be [lo, hi] or \"lo-hi\"");
  return DigitPair{j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

void ExperimentPlan::validate() const {
  check_nonempty(pairs, "pairs");
  check_nonempty(hidden_sizes, "hidden_sizes");
  check_nonempty(learning_rates, "learning_rates");
  check_nonempty(seeds, "seeds");
  check_nonempty(sparsity_levels, "sparsity_levels");
  check_nonempty(gaussian_sigmas, "gaussian_sigmas");
  check_nonempty(corruption_seeds, "corruption_seeds");
  check_nonempty(robustness_hidden, "robustness_hidden");
  for (const auto& p : pairs) check_pair(p);
  check_pair(grid_pair);
  check_pair(robustness_pair);
  check_pair(interp_target.pair);
  for (int h : hidden_sizes) check(h >= 1, "hidden sizes must be positive");
  for (int h : robustness_hidden) check(h >= 1, "hidden sizes must be positive");
  for (double lr : learning_rates) check(lr > 0, "learning rates must be positive");
  check(main_lr > 0, "main_lr must be positive");
  check(epochs >= 1 && batch_size >= 1, "epochs and batch_size must be >= 1");
  for (double p : sparsity_levels) check(p >= 0 && p < 1, "sparsity levels must lie in [0, 1)");
  check(audit_prune_prob >= 0 && audit_prune_prob < 1, "audit_prune_prob must lie in [0, 1)");
  check(interp_prune_prob >= 0 && interp_prune_prob < 1, "interp_prune_prob must lie in [0, 1)");
  for (double s : gaussian_sigmas) check(s >= 0, "sigmas must be non-negative");
  check(occlusion_patch >= 1 && occlusion_patch <= kImageSide, "occlusion_patch must lie in [1, 28]");
  check(workers >= 1, "workers must be >= 1");
  check(interp_target.hidden >= 1, "interp hidden size must be positive");
  try {
    tsne.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
}

std::string plan_to_json(const ExperimentPlan& plan) {
  json j;
  j["pairs"] = json::array();
  for (const auto& p : plan.pairs) j["pairs"].push_back(pair_json(p));
  j["hidden_sizes"] = plan.hidden_sizes;
  j["learning_rates"] = plan.learning_rates;
  j["seeds"] = plan.seeds;
  j["epochs"] = plan.epochs;
  j["batch_size"] = plan.batch_size;
  j["master_seed"] = plan.master_seed;
  j["main_lr"] = plan.main_lr;
  j["grid_pair"] = pair_json(plan.grid_pair);
  j["sparsity_levels"] = plan.sparsity_levels;
  j["robustness_pair"] = pair_json(plan.robustness_pair);
  j["robustness_hidden"] = plan.robustness_hidden;
  j["gaussian_sigmas"] = plan.gaussian_sigmas;
  j["occlusion_patch"] = plan.occlusion_patch;
  j["corruption_seeds"] = plan.corruption_seeds;
  j["dead_neuron_targets"] = json::array();
  for (const auto& t : plan.dead_neuron_targets) {
    j["dead_neuron_targets"].push_back({{"pair", pair_json(t.pair)}, {"hidden", t.hidden}});
  }
  j["audit_prune_prob"] = plan.audit_prune_prob;
  j["interp_target"] = {{"pair", pair_json(plan.interp_target.pair)},
                        {"hidden", plan.interp_target.hidden}};
  j["interp_prune_prob"] = plan.interp_prune_prob;
  j["saliency_epsilon"] = plan.saliency_epsilon;
  j["tsne"] = {{"perplexity", plan.tsne.perplexity},
               {"iterations", plan.tsne.iterations},
               {"learning_rate", plan.tsne.learning_rate},
               {"initial_momentum", plan.tsne.initial_momentum},
               {"final_momentum", plan.tsne.final_momentum},
               {"momentum_switch_iter", plan.tsne.momentum_switch_iter},
               {"exaggeration", plan.tsne.exaggeration},
               {"exaggeration_iters", plan.tsne.exaggeration_iters},
               {"seed", plan.tsne.seed},
               {"subsample_n", plan.tsne.subsample_n}};
  j["out_dir"] = plan.out_dir.string();
  j["data_dir"] = plan.data_dir.string();
  j["source_url"] = plan.source_url;
  j["workers"] = plan.workers;
  return j.dump(2);
}

ExperimentPlan plan_from_json(const std::string& text, ExperimentPlan plan) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  check(j.is_object(), "config must be a JSON object");
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    if (j.contains("pairs")) {
      plan.pairs.clear();
      for (const auto& p : j["pairs"]) plan.pairs.push_back(pair_from(p));
    }
    get("hidden_sizes", plan.hidden_sizes);
    get("learning_rates", plan.learning_rates);
    get("seeds", plan.seeds);
    get("epochs", plan.epochs);
    get("batch_size", plan.batch_size);
    get("master_seed", plan.master_seed);
    get("main_lr", plan.main_lr);
    if (j.contains("grid_pair")) plan.grid_pair = pair_from(j["grid_pair"]);
    get("sparsity_levels", plan.sparsity_levels);
    if (j.contains("robustness_pair")) plan.robustness_pair = pair_from(j["robustness_pair"]);
    get("robustness_hidden", plan.robustness_hidden);
    get("gaussian_sigmas", plan.gaussian_sigmas);
    get("occlusion_patch", plan.occlusion_patch);
    get("corruption_seeds", plan.corruption_seeds);
    if (j.contains("dead_neuron_targets")) {
      plan.dead_neuron_targets.clear();
      for (const auto& t : j["dead_neuron_targets"]) {
        plan.dead_neuron_targets.push_back({pair_from(t.at("pair")), t.at("hidden").get<int>()});
      }
    }
    get("audit_prune_prob", plan.audit_prune_prob);
    if (j.contains("interp_target")) {
      plan.interp_target = {pair_from(j["interp_target"].at("pair")),
                            j["interp_target"].at("hidden").get<int>()};
    }
    get("interp_prune_prob", plan.interp_prune_prob);
    get("saliency_epsilon", plan.saliency_epsilon);
    if (j.contains("tsne")) {
      const auto& t = j["tsne"];
      auto tget = [&](const char* key, auto& field) {
        if (t.contains(key)) field = t.at(key).get<std::decay_t<decltype(field)>>();
      };
      tget("perplexity", plan.tsne.perplexity);
      tget("iterations", plan.tsne.iterations);
      tget("learning_rate", plan.tsne.learning_rate);
      tget("initial_momentum", plan.tsne.initial_momentum);
      tget("final_momentum", plan.tsne.final_momentum);
      tget("momentum_switch_iter", plan.tsne.momentum_switch_iter);
      tget("exaggeration", plan.tsne.exaggeration);
      tget("exaggeration_iters", plan.tsne.exaggeration_iters);
      tget("seed", plan.tsne.seed);
      tget("subsample_n", plan.tsne.subsample_n);
    }
    if (j.contains("out_dir")) plan.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("data_dir")) plan.data_dir = j["data_dir"].get<std::string>();
    get("source_url", plan.source_url);
    get("workers", plan.workers);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("bad config field: ") + e.what());
  }
  plan.validate();
  return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& path, ExperimentPlan base) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kConfigError, "cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return plan_from_json(buffer.str(), std::move(base));
}

std::uint64_t derive_seed(std::uint64_t master, DigitPair pair, int hidden, double lr,
                          int seed_index) {
  std::uint64_t h = mix(master, 0x6d6c706c6162ULL);
  h = mix(h, static_cast<std::uint64_t>(pair.lo * 10 + pair.hi));
  h = mix(h, static_cast<std::uint64_t>(hidden));
  h = mix(h, std::bit_cast<std::uint64_t>(lr));
  return mix(h, static_cast<std::uint64_t>(seed_index));
}

std::uint64_t derive_corruption_seed(std::uint64_t master, const std::string& kind, double param,
                                     int corrupt_index) {
  std::uint64_t h = mix(master, 0x636f7272757074ULL);
  for (char c : kind) h = mix(h, static_cast<unsigned char>(c));
  h = mix(h, std::bit_cast<std::uint64_t>(param));
  return mix(h, static_cast<std::uint64_t>(corrupt_index));
}

}  // namespace mlplab::lab
