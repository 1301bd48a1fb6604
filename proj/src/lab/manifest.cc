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

#include "mlplab/lab/manifest.hpp"

#include <chrono>
#include <ctime>

#include <json.hpp>

#include "mlplab/errors.hpp"

namespace mlplab::lab {

using nlohmann::json;

Manifest::Manifest(std::filesystem::path out_dir) : out_dir_(std::move(out_dir)) {}

Manifest Manifest::open(const std::filesystem::path& out_dir) {
  Manifest m(out_dir);
  const auto path = m.path();
  if (!std::filesystem::exists(path)) return m;
  const auto bytes = read_file_bytes(path);
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
    m.plan_json_ = j.at("plan").dump(2);
    for (const auto& d : j.at("dataset")) {
      m.dataset_.push_back({d.at("filename"), d.at("size"), d.at("sha256")});
    }
    for (const auto& [id, c] : j.at("cells").items()) {
      m.cells_[id] = CellEntry{c.at("status"),     c.at("checkpoint"),   c.at("epochs_csv"),
                               c.at("wall_time"),  c.at("completed_at"), c.at("message")};
    }
    for (const auto& [name, outputs] : j.at("stages").items()) {
      m.stages_[name] = outputs.get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIoError, path.string() + " unreadable: " + e.what());
  }
  return m;
}

void Manifest::set_dataset(std::span<const ManifestEntry> entries) {
  dataset_.assign(entries.begin(), entries.end());
}

std::optional<CellEntry> Manifest::cell(const std::string& id) const {
  auto it = cells_.find(id);
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

bool Manifest::cell_complete(const std::string& id) const {
  auto c = cell(id);
  if (!c) return false;
  if (!c->checkpoint.empty() && !std::filesystem::exists(out_dir_ / c->checkpoint)) return false;
  if (!c->epochs_csv.empty() && !std::filesystem::exists(out_dir_ / c->epochs_csv)) return false;
  return true;
}

void Manifest::record_cell(const std::string& id, CellEntry entry) { cells_[id] = std::move(entry); }

void Manifest::record_stage(const std::string& name, std::vector<std::string> outputs) {
  stages_[name] = std::move(outputs);
}

bool Manifest::outputs_exist() const {
  for (const auto& [id, c] : cells_) {
    if (!cell_complete(id)) return false;
  }
  for (const auto& [name, outputs] : stages_) {
    for (const auto& o : outputs) {
      if (!std::filesystem::exists(out_dir_ / o)) return false;
    }
  }
  return true;
}

std::string Manifest::to_json() const {
  json j;
  j["code_version"] = kCodeVersion;
  j["plan"] = json::parse(plan_json_);
  j["dataset"] = json::array();
  for (const auto& d : dataset_) {
    j["dataset"].push_back({{"filename", d.filename}, {"size", d.size}, {"sha256", d.sha256}});
  }
  j["cells"] = json::object();
  for (const auto& [id, c] : cells_) {
    j["cells"][id] = {{"status", c.status},         {"checkpoint", c.checkpoint},
                      {"epochs_csv", c.epochs_csv}, {"wall_time", c.wall_time},
                      {"completed_at", c.completed_at}, {"message", c.message}};
  }
  j["stages"] = json::object();
  for (const auto& [name, outputs] : stages_) j["stages"][name] = outputs;
  return j.dump(2) + "\n";
}

void Manifest::save() const {
  const std::string text = to_json();
  write_file_atomic(path(), std::span<const std::uint8_t>(
                                reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace mlplab::lab
