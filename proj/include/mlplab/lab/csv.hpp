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

#ifndef MLPLAB_LAB_CSV_HPP_
#define MLPLAB_LAB_CSV_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mlplab/mnist.hpp"

namespace mlplab::lab {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);
double parse_number(std::string_view text);
std::int64_t parse_integer(std::string_view text);

// A header plus string cells. Writers never quote; no field contains a comma.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
  std::string to_string() const;
};

/// Throws kMalformedCsv on an empty file, a ragged row, or (when
/// `expected_header` is non-empty) a header mismatch.
CsvTable parse_csv(std::string_view text, const std::vector<std::string>& expected_header = {});
CsvTable read_csv(const std::filesystem::path& path,
                  const std::vector<std::string>& expected_header = {});
void write_csv(const std::filesystem::path& path, const CsvTable& table);

// runs.csv
struct RunRow {
  DigitPair pair;
  int hidden = 0;
  double lr = 0;
  int seed = 0;
  int epoch = 0;
  double train_loss = 0;
  double val_loss = 0;
  double val_f1 = 0;
  double val_auc = 0;

  friend bool operator==(const RunRow&, const RunRow&) = default;
};

// prune.csv; nnz counts are after pruning.
struct PruneRow {
  DigitPair pair;
  int hidden = 0;
  int seed = 0;
  double prune_prob = 0;
  double f1_before = 0;
  double f1_after = 0;
  double delta_pct = 0;
  std::int64_t nnz_w1 = 0;
  std::int64_t nnz_w2 = 0;
  std::int64_t dead_before = 0;
  std::int64_t dead_after = 0;

  friend bool operator==(const PruneRow&, const PruneRow&) = default;
};

// robust.csv
struct RobustRow {
  DigitPair pair;
  int hidden = 0;
  int train_seed = 0;
  int corrupt_seed = 0;
  std::string kind;  // "gaussian" | "occlusion"
  double param = 0;  // sigma or patch side
  double f1 = 0;

  friend bool operator==(const RobustRow&, const RobustRow&) = default;
};

const std::vector<std::string>& run_columns();
const std::vector<std::string>& prune_columns();
const std::vector<std::string>& robust_columns();

CsvTable to_table(const std::vector<RunRow>& rows);
CsvTable to_table(const std::vector<PruneRow>& rows);
CsvTable to_table(const std::vector<RobustRow>& rows);

std::vector<RunRow> run_rows(const CsvTable& table);
std::vector<PruneRow> prune_rows(const CsvTable& table);
std::vector<RobustRow> robust_rows(const CsvTable& table);

}  // namespace mlplab::lab

#endif  // MLPLAB_LAB_CSV_HPP_
