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

#ifndef MLPLAB_MNIST_HPP_
#define MLPLAB_MNIST_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mlplab/types.hpp"

namespace mlplab {

enum class Split { kTrain, kTest };

inline constexpr std::uint32_t kIdxImageMagic = 2051;
inline constexpr std::uint32_t kIdxLabelMagic = 2049;

// Image payload of an IDX3 file. Pixels are divided by 255 on parse, so
// every entry lies in [0, 1]; each image is flattened row-major into one row.
struct IdxImages {
  FeatureMatrix pixels;
  std::uint32_t rows = kImageSide;
  std::uint32_t cols = kImageSide;
};

struct IdxLabels {
  std::vector<std::uint8_t> labels;
};

using IdxContent = std::variant<IdxImages, IdxLabels>;

/// Parses an uncompressed IDX container (magic 2051 or 2049).
/// Throws Error{kBadMagic} or Error{kTruncated}.
IdxContent parse_idx(std::span<const std::uint8_t> bytes);

/// Inverse of parse_idx; byte-exact for anything parse_idx produced.
std::vector<std::uint8_t> serialize_idx(const IdxImages& images);
std::vector<std::uint8_t> serialize_idx(const IdxLabels& labels);

struct RawMnist {
  FeatureMatrix images;  // N x 784
  std::vector<std::uint8_t> labels;
  Split split = Split::kTrain;

  Eigen::Index size() const { return images.rows(); }
};

/// Pairs an image file with its label file; counts and digit range are checked.
RawMnist assemble_mnist(IdxImages images, IdxLabels labels, Split split);

struct DigitPair {
  int lo = 0;
  int hi = 1;

  friend bool operator==(const DigitPair&, const DigitPair&) = default;
};

// Ordered from easiest to hardest.
inline constexpr std::array<DigitPair, 5> kStandardPairs = {
    DigitPair{0, 1}, DigitPair{1, 7}, DigitPair{5, 6}, DigitPair{3, 8}, DigitPair{4, 9}};

std::string to_string(const DigitPair& pair);      // "4-9"
DigitPair parse_digit_pair(const std::string& text);  // accepts "4-9", "4,9", "49"

struct BinaryTask {
  DigitPair pair;
  FeatureMatrix train_x;
  Eigen::VectorXd train_y;  // 0 for pair.lo, 1 for pair.hi
  FeatureMatrix val_x;
  Eigen::VectorXd val_y;
};

/// Filters both splits down to `pair`, preserving the original order.
/// The official test split serves as the validation set.
BinaryTask build_binary_task(const RawMnist& train, const RawMnist& test, DigitPair pair);

enum class CorruptionKind { kGaussian, kOcclusion };

struct CorruptionSpec {
  CorruptionKind kind = CorruptionKind::kGaussian;
  double sigma = 0.0;
  int patch = 7;
  std::uint64_t seed = 0;
};

/// x + N(0, sigma^2) per pixel, clipped to [0, 1].
FeatureMatrix corrupt_gaussian(const FeatureMatrix& x, double sigma, std::uint64_t seed);

/// Zeroes one patch x patch block per row at a uniformly drawn, fully
/// contained position.
FeatureMatrix corrupt_occlusion(const FeatureMatrix& x, int patch, std::uint64_t seed);

FeatureMatrix apply_corruption(const FeatureMatrix& x, const CorruptionSpec& spec);

}  // namespace mlplab

#endif  // MLPLAB_MNIST_HPP_
