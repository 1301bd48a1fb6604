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

#ifndef MLPLAB_CHECKPOINT_HPP_
#define MLPLAB_CHECKPOINT_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mlplab/mlp.hpp"

namespace mlplab {

// `.mlp` layout, all little-endian:
//   8 bytes  magic "MLPLAB\0\x01"
//   u32      format version
//   u32      hidden size H
//   f64      w1 (H x 784, row-major), b1 (H), w2 (H), b2
inline constexpr std::array<std::uint8_t, 8> kCheckpointMagic = {'M', 'L', 'P', 'L', 'A', 'B', 0, 1};
inline constexpr std::uint32_t kCheckpointVersion = 1;
inline constexpr std::size_t kCheckpointHeaderBytes = 16;

std::size_t checkpoint_size(Eigen::Index hidden_size);

std::vector<std::uint8_t> save_checkpoint(const MlpD& model);
/// Throws kBadMagic, kVersionUnsupported or kTruncated.
MlpD load_checkpoint(std::span<const std::uint8_t> bytes);

void save_checkpoint_file(const MlpD& model, const std::filesystem::path& path);
MlpD load_checkpoint_file(const std::filesystem::path& path);

}  // namespace mlplab

#endif  // MLPLAB_CHECKPOINT_HPP_
