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

#include "mlplab/lab/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mlplab/errors.hpp"
#include "mlplab/fetch.hpp"

namespace mlplab::lab {

std::string format_number(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  require(ec == std::errc(), ErrorCode::kIoError, "number formatting failed");
  return std::string(buf, end);
}

double parse_number(std::string_view text) {
  double value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && end == text.data() + text.size(), ErrorCode::kMalformedCsv,
          "not a number: '" + std::string(text) + "'");
  return value;
}

std::int64_t parse_integer(std::string_view text) {
  std::int64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && end == text.data() + text.size(), ErrorCode::kMalformedCsv,
          "not an integer: '" + std::string(text) + "'");
  return value;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorCode::kMalformedCsv, "missing column '" + std::string(name) + "'");
}

namespace {

std::string join(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  return line;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::string CsvTable::to_string() const {
  std::string out = join(header) + "\n";
  for (const auto& row : rows) out += join(row) + "\n";
  return out;
}

CsvTable parse_csv(std::string_view text, const std::vector<std::string>& expected_header) {
  std::istringstream in{std::string(text)};
  std::string line;
  CsvTable table;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (table.header.empty()) {
      table.header = split(line);
      continue;
    }
    auto fields = split(line);
    require(fields.size() == table.header.size(), ErrorCode::kMalformedCsv,
            "row " + std::to_string(table.rows.size() + 1) + " has " +
                std::to_string(fields.size()) + " fields, header has " +
                std::to_string(table.header.size()));
    table.rows.push_back(std::move(fields));
  }
  require(!table.header.empty(), ErrorCode::kMalformedCsv, "empty CSV");
  if (!expected_header.empty()) {
    require(table.header == expected_header, ErrorCode::kMalformedCsv,
            "unexpected header '" + join(table.header) + "'");
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path,
                  const std::vector<std::string>& expected_header) {
  require(std::filesystem::exists(path), ErrorCode::kMalformedCsv, path.string() + " missing");
  const auto bytes = read_file_bytes(path);
  try {
    return parse_csv(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                     expected_header);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  const std::string text = table.to_string();
  write_file_atomic(path, std::span<const std::uint8_t>(
                              reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

const std::vector<std::string>& run_columns() {
  static const std::vector<std::string> c = {"pair",     "hidden",     "lr",     "seed",   "epoch",
                                             "train_loss", "val_loss", "val_f1", "val_auc"};
  return c;
}

const std::vector<std::string>& prune_columns() {
  static const std::vector<std::string> c = {
      "pair",      "hidden", "seed",   "prune_prob",  "f1_before", "f1_after",
      "delta_pct", "nnz_w1", "nnz_w2", "dead_before", "dead_after"};
  return c;
}

const std::vector<std::string>& robust_columns() {
  static const std::vector<std::string> c = {"pair",  "hidden", "train_seed", "corrupt_seed",
                                             "kind",  "param",  "f1"};
  return c;
}

CsvTable to_table(const std::vector<RunRow>& rows) {
  CsvTable t{run_columns(), {}};
  for (const auto& r : rows) {
    t.rows.push_back({to_string(r.pair), std::to_string(r.hidden), format_number(r.lr),
                      std::to_string(r.seed), std::to_string(r.epoch), format_number(r.train_loss),
                      format_number(r.val_loss), format_number(r.val_f1), format_number(r.val_auc)});
  }
  return t;
}

CsvTable to_table(const std::vector<PruneRow>& rows) {
  CsvTable t{prune_columns(), {}};
  for (const auto& r : rows) {
    t.rows.push_back({to_string(r.pair), std::to_string(r.hidden), std::to_string(r.seed),
                      format_number(r.prune_prob), format_number(r.f1_before),
                      format_number(r.f1_after), format_number(r.delta_pct),
                      std::to_string(r.nnz_w1), std::to_string(r.nnz_w2),
                      std::to_string(r.dead_before), std::to_string(r.dead_after)});
  }
  return t;
}

CsvTable to_table(const std::vector<RobustRow>& rows) {
  CsvTable t{robust_columns(), {}};
  for (const auto& r : rows) {
    t.rows.push_back({to_string(r.pair), std::to_string(r.hidden), std::to_string(r.train_seed),
                      std::to_string(r.corrupt_seed), r.kind, format_number(r.param),
                      format_number(r.f1)});
  }
  return t;
}

namespace {

DigitPair pair_field(const std::string& text) {
  try {
    return parse_digit_pair(text);
  } catch (const Error&) {
    throw Error(ErrorCode::kMalformedCsv, "bad pair '" + text + "'");
  }
}

int int_field(const std::string& text) { return static_cast<int>(parse_integer(text)); }

}  // namespace

std::vector<RunRow> run_rows(const CsvTable& table) {
  require(table.header == run_columns(), ErrorCode::kMalformedCsv, "not a runs.csv table");
  std::vector<RunRow> out;
  for (const auto& f : table.rows) {
    out.push_back(RunRow{pair_field(f[0]), int_field(f[1]), parse_number(f[2]), int_field(f[3]),
                         int_field(f[4]), parse_number(f[5]), parse_number(f[6]),
                         parse_number(f[7]), parse_number(f[8])});
  }
  return out;
}

std::vector<PruneRow> prune_rows(const CsvTable& table) {
  require(table.header == prune_columns(), ErrorCode::kMalformedCsv, "not a prune.csv table");
  std::vector<PruneRow> out;
  for (const auto& f : table.rows) {
    out.push_back(PruneRow{pair_field(f[0]), int_field(f[1]), int_field(f[2]), parse_number(f[3]),
                           parse_number(f[4]), parse_number(f[5]), parse_number(f[6]),
                           parse_integer(f[7]), parse_integer(f[8]), parse_integer(f[9]),
                           parse_integer(f[10])});
  }
  return out;
}

std::vector<RobustRow> robust_rows(const CsvTable& table) {
  require(table.header == robust_columns(), ErrorCode::kMalformedCsv, "not a robust.csv table");
  std::vector<RobustRow> out;
  for (const auto& f : table.rows) {
    require(f[4] == "gaussian" || f[4] == "occlusion", ErrorCode::kMalformedCsv,
            "unknown corruption kind '" + f[4] + "'");
    out.push_back(RobustRow{pair_field(f[0]), int_field(f[1]), int_field(f[2]), int_field(f[3]),
                            f[4], parse_number(f[5]), parse_number(f[6])});
  }
  return out;
}

}  // namespace mlplab::lab
