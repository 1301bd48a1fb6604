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

#include "mlplab/mnist.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "mlplab/errors.hpp"

namespace mlplab {
namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  if (bytes.size() < offset + 4) {
    throw Error(ErrorCode::kTruncated, "IDX header ends at byte " + std::to_string(bytes.size()));
  }
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void write_be32(std::vector<std::uint8_t>& out, std::uint32_t value) {
  out.push_back(static_cast<std::uint8_t>(value >> 24));
  out.push_back(static_cast<std::uint8_t>(value >> 16));
  out.push_back(static_cast<std::uint8_t>(value >> 8));
  out.push_back(static_cast<std::uint8_t>(value));
}

std::uint8_t to_byte(double intensity) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(intensity, 0.0, 1.0) * 255.0));
}

}  // namespace

IdxContent parse_idx(std::span<const std::uint8_t> bytes) {
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic == kIdxImageMagic) {
    const std::uint32_t count = read_be32(bytes, 4);
    const std::uint32_t rows = read_be32(bytes, 8);
    const std::uint32_t cols = read_be32(bytes, 12);
    const std::uint64_t pixels = std::uint64_t{rows} * cols;
    const std::uint64_t needed = 16 + std::uint64_t{count} * pixels;
    if (bytes.size() < needed) {
      throw Error(ErrorCode::kTruncated, "image payload declares " + std::to_string(needed) +
                                             " bytes, have " + std::to_string(bytes.size()));
    }
    IdxImages out;
    out.rows = rows;
    out.cols = cols;
    out.pixels.resize(count, static_cast<Eigen::Index>(pixels));
    const std::uint8_t* src = bytes.data() + 16;
    double* dst = out.pixels.data();
    for (std::uint64_t i = 0; i < count * pixels; ++i) dst[i] = src[i] / 255.0;
    return out;
  }
  if (magic == kIdxLabelMagic) {
    const std::uint32_t count = read_be32(bytes, 4);
    if (bytes.size() < 8 + std::uint64_t{count}) {
      throw Error(ErrorCode::kTruncated, "label payload declares " + std::to_string(count) +
                                             " items, have " + std::to_string(bytes.size() - 8));
    }
    IdxLabels out;
    out.labels.assign(bytes.begin() + 8, bytes.begin() + 8 + count);
    return out;
  }
  throw Error(ErrorCode::kBadMagic, "unrecognized IDX magic " + std::to_string(magic));
}

std::vector<std::uint8_t> serialize_idx(const IdxImages& images) {
  std::vector<std::uint8_t> out;
  out.reserve(16 + images.pixels.size());
  write_be32(out, kIdxImageMagic);
  write_be32(out, static_cast<std::uint32_t>(images.pixels.rows()));
  write_be32(out, images.rows);
  write_be32(out, images.cols);
  const double* src = images.pixels.data();
  for (Eigen::Index i = 0; i < images.pixels.size(); ++i) out.push_back(to_byte(src[i]));
  return out;
}

std::vector<std::uint8_t> serialize_idx(const IdxLabels& labels) {
  std::vector<std::uint8_t> out;
  out.reserve(8 + labels.labels.size());
  write_be32(out, kIdxLabelMagic);
  write_be32(out, static_cast<std::uint32_t>(labels.labels.size()));
  out.insert(out.end(), labels.labels.begin(), labels.labels.end());
  return out;
}

RawMnist assemble_mnist(IdxImages images, IdxLabels labels, Split split) {
  require(images.rows == kImageSide && images.cols == kImageSide, ErrorCode::kShapeMismatch,
          "expected 28x28 images");
  require(static_cast<std::size_t>(images.pixels.rows()) == labels.labels.size(),
          ErrorCode::kShapeMismatch, "image and label counts differ");
  for (std::uint8_t label : labels.labels) {
    require(label <= 9, ErrorCode::kInvalidArgument, "label out of range: " + std::to_string(label));
  }
  return RawMnist{std::move(images.pixels), std::move(labels.labels), split};
}

std::string to_string(const DigitPair& pair) {
  return std::to_string(pair.lo) + "-" + std::to_string(pair.hi);
}

DigitPair parse_digit_pair(const std::string& text) {
  std::vector<int> digits;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c - '0');
    } else if (c != '-' && c != ',' && c != ' ' && c != '(' && c != ')') {
      throw Error(ErrorCode::kConfigError, "bad digit pair '" + text + "'");
    }
  }
  require(digits.size() == 2, ErrorCode::kConfigError, "bad digit pair '" + text + "'");
  return DigitPair{digits[0], digits[1]};
}

namespace {

void filter_split(const RawMnist& raw, DigitPair pair, FeatureMatrix& x, Eigen::VectorXd& y) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    const int label = raw.labels[static_cast<std::size_t>(i)];
    if (label == pair.lo || label == pair.hi) rows.push_back(i);
  }
  x.resize(static_cast<Eigen::Index>(rows.size()), raw.images.cols());
  y.resize(static_cast<Eigen::Index>(rows.size()));
  std::size_t n_hi = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto i = rows[r];
    x.row(static_cast<Eigen::Index>(r)) = raw.images.row(i);
    const bool hi = raw.labels[static_cast<std::size_t>(i)] == pair.hi;
    y(static_cast<Eigen::Index>(r)) = hi ? 1.0 : 0.0;
    n_hi += hi;
  }
  const char* split = raw.split == Split::kTrain ? "train" : "test";
  require(n_hi > 0, ErrorCode::kEmptyClass,
          "digit " + std::to_string(pair.hi) + " absent from " + split + " split");
  require(n_hi < rows.size(), ErrorCode::kEmptyClass,
          "digit " + std::to_string(pair.lo) + " absent from " + split + " split");
}

}  // namespace

BinaryTask build_binary_task(const RawMnist& train, const RawMnist& test, DigitPair pair) {
  require(pair.lo >= 0 && pair.lo <= 9 && pair.hi >= 0 && pair.hi <= 9,
          ErrorCode::kInvalidArgument, "digits must lie in 0-9");
  require(pair.lo != pair.hi, ErrorCode::kInvalidArgument,
          "pair digits must be distinct, got " + to_string(pair));
  BinaryTask task;
  task.pair = pair;
  filter_split(train, pair, task.train_x, task.train_y);
  filter_split(test, pair, task.val_x, task.val_y);
  return task;
}

FeatureMatrix corrupt_gaussian(const FeatureMatrix& x, double sigma, std::uint64_t seed) {
  require(sigma >= 0.0, ErrorCode::kInvalidArgument, "sigma must be non-negative");
  FeatureMatrix out = x;
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  double* data = out.data();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    data[i] = std::clamp(data[i] + noise(rng), 0.0, 1.0);
  }
  return out;
}

FeatureMatrix corrupt_occlusion(const FeatureMatrix& x, int patch, std::uint64_t seed) {
  require(patch >= 1 && patch <= kImageSide, ErrorCode::kInvalidArgument,
          "occlusion patch must lie in [1, 28]");
  require(x.cols() == kImagePixels, ErrorCode::kShapeMismatch, "expected 784 columns");
  FeatureMatrix out = x;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> corner(0, kImageSide - patch);
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    const int top = corner(rng);
    const int left = corner(rng);
    for (int dy = 0; dy < patch; ++dy) {
      out.row(r).segment((top + dy) * kImageSide + left, patch).setZero();
    }
  }
  return out;
}

FeatureMatrix apply_corruption(const FeatureMatrix& x, const CorruptionSpec& spec) {
  switch (spec.kind) {
    case CorruptionKind::kGaussian: return corrupt_gaussian(x, spec.sigma, spec.seed);
    case CorruptionKind::kOcclusion: return corrupt_occlusion(x, spec.patch, spec.seed);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown corruption kind");
}

}  // namespace mlplab
