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

#ifndef MLPLAB_LAB_MANIFEST_HPP_
#define MLPLAB_LAB_MANIFEST_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlplab/fetch.hpp"

namespace mlplab::lab {

inline constexpr const char* kCodeVersion = "mlplab 1.0.0";

struct CellEntry {
  std::string status;      // "ok" | "diverged" | "failed"
  std::string checkpoint;  // relative to the run directory; empty unless ok
  std::string epochs_csv;  // relative to the run directory
  double wall_time = 0;    // seconds
  std::string completed_at;
  std::string message;

  friend bool operator==(const CellEntry&, const CellEntry&) = default;
};

// `<out_dir>/manifest.json`: what produced a run directory and which cells
// are finished. Keys are kept sorted, so content does not depend on the order
// in which workers finish.
class Manifest {
 public:
  explicit Manifest(std::filesystem::path out_dir);

  /// Loads an existing manifest, or starts an empty one.
  static Manifest open(const std::filesystem::path& out_dir);

  const std::filesystem::path& out_dir() const { return out_dir_; }
  std::filesystem::path path() const { return out_dir_ / "manifest.json"; }

  void set_plan(std::string plan_json) { plan_json_ = std::move(plan_json); }
  void set_dataset(std::span<const ManifestEntry> entries);

  std::optional<CellEntry> cell(const std::string& id) const;
  /// True when the cell finished and every file it references exists.
  bool cell_complete(const std::string& id) const;
  void record_cell(const std::string& id, CellEntry entry);

  void record_stage(const std::string& name, std::vector<std::string> outputs);
  const std::map<std::string, std::vector<std::string>>& stages() const { return stages_; }
  const std::map<std::string, CellEntry>& cells() const { return cells_; }

  /// Every referenced file exists under out_dir.
  bool outputs_exist() const;

  std::string to_json() const;
  void save() const;

 private:
  std::filesystem::path out_dir_;
  std::string plan_json_ = "{}";
  std::vector<ManifestEntry> dataset_;
  std::map<std::string, CellEntry> cells_;
  std::map<std::string, std::vector<std::string>> stages_;
};

std::string utc_timestamp();

}  // namespace mlplab::lab

#endif  // MLPLAB_LAB_MANIFEST_HPP_
