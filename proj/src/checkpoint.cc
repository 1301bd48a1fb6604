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

#include "mlplab/checkpoint.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "mlplab/fetch.hpp"

namespace mlplab {
namespace {

class Writer {
 public:
  explicit Writer(std::size_t capacity) { out_.reserve(capacity); }

  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::span<const std::uint8_t> take(std::size_t n) {
    require(pos_ + n <= in_.size(), ErrorCode::kTruncated,
            "checkpoint ends at byte " + std::to_string(in_.size()));
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t u32() {
    auto s = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{s[i]} << (8 * i);
    return v;
  }
  double f64() {
    auto s = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{s[i]} << (8 * i);
    return std::bit_cast<double>(v);
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::size_t checkpoint_size(Eigen::Index hidden_size) {
  const auto h = static_cast<std::size_t>(hidden_size);
  return kCheckpointHeaderBytes + 8 * (h * kImagePixels + h + h + 1);
}

std::vector<std::uint8_t> save_checkpoint(const MlpD& model) {
  model.check_shape();
  require(model.input_size() == kImagePixels, ErrorCode::kShapeMismatch,
          "checkpoints hold 784-input models only");
  const Eigen::Index h = model.hidden_size();
  Writer w(checkpoint_size(h));
  w.bytes(kCheckpointMagic);
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(h));
  for (Eigen::Index r = 0; r < h; ++r) {
    for (Eigen::Index c = 0; c < kImagePixels; ++c) w.f64(model.w1(r, c));
  }
  for (Eigen::Index j = 0; j < h; ++j) w.f64(model.b1(j));
  for (Eigen::Index j = 0; j < h; ++j) w.f64(model.w2(j));
  w.f64(model.b2);
  return w.take();
}

MlpD load_checkpoint(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const auto magic = r.take(kCheckpointMagic.size());
  require(std::equal(magic.begin(), magic.end(), kCheckpointMagic.begin()), ErrorCode::kBadMagic,
          "not an .mlp checkpoint");
  const std::uint32_t version = r.u32();
  require(version == kCheckpointVersion, ErrorCode::kVersionUnsupported,
          "checkpoint version " + std::to_string(version));
  const std::uint32_t h = r.u32();
  require(h >= 1, ErrorCode::kShapeMismatch, "checkpoint declares zero hidden units");
  require(bytes.size() >= checkpoint_size(h), ErrorCode::kTruncated,
          "checkpoint needs " + std::to_string(checkpoint_size(h)) + " bytes, have " +
              std::to_string(bytes.size()));
  auto m = MlpD::zeros(h);
  for (Eigen::Index i = 0; i < h; ++i) {
    for (Eigen::Index c = 0; c < kImagePixels; ++c) m.w1(i, c) = r.f64();
  }
  for (Eigen::Index j = 0; j < h; ++j) m.b1(j) = r.f64();
  for (Eigen::Index j = 0; j < h; ++j) m.w2(j) = r.f64();
  m.b2 = r.f64();
  return m;
}

void save_checkpoint_file(const MlpD& model, const std::filesystem::path& path) {
  write_file_atomic(path, save_checkpoint(model));
}

MlpD load_checkpoint_file(const std::filesystem::path& path) {
  require(std::filesystem::exists(path), ErrorCode::kMissingCheckpoint, path.string());
  return load_checkpoint(read_file_bytes(path));
}

}  // namespace mlplab
