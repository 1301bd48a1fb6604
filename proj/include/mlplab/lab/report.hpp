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

#ifndef MLPLAB_LAB_REPORT_HPP_
#define MLPLAB_LAB_REPORT_HPP_

#include <filesystem>
#include <vector>

namespace mlplab::lab {

/// Renders SVG charts for every stage summary found under `run_dir` into
/// `run_dir/report/`. Returns the written paths, relative to `run_dir`.
/// A summary that is present but has no data rows raises kMalformedCsv, as
/// does a run directory with no summaries at all.
std::vector<std::filesystem::path> render_report(const std::filesystem::path& run_dir);

}  // namespace mlplab::lab

#endif  // MLPLAB_LAB_REPORT_HPP_
