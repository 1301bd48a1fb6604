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

#ifndef MLPLAB_FETCH_HPP_
#define MLPLAB_FETCH_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlplab/mnist.hpp"

namespace mlplab {

// One line of a data manifest. `size` and `sha256` describe the
// decompressed IDX payload, so any gzip encoding of the same data verifies.
struct ManifestEntry {
  std::string filename;
  std::uint64_t size = 0;
  std::string sha256;
};

inline constexpr std::string_view kDefaultMnistUrl = "https://ossci-datasets.s3.amazonaws.com/mnist";

inline constexpr std::string_view kTrainImagesFile = "train-images-idx3-ubyte.gz";
inline constexpr std::string_view kTrainLabelsFile = "train-labels-idx1-ubyte.gz";
inline constexpr std::string_view kTestImagesFile = "t10k-images-idx3-ubyte.gz";
inline constexpr std::string_view kTestLabelsFile = "t10k-labels-idx1-ubyte.gz";

/// Text form: one `<filename> <size> <sha256>` triple per line; `#` starts a comment.
std::vector<ManifestEntry> parse_data_manifest(std::string_view text);
std::string format_data_manifest(std::span<const ManifestEntry> entries);

/// The checksums every fetch is verified against unless overridden.
const std::vector<ManifestEntry>& pinned_mnist_manifest();

std::string sha256_hex(std::span<const std::uint8_t> bytes);
bool is_gzip(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> gunzip(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> gzip_compress(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
/// Writes through a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

struct FetchOptions {
  std::string source_url = std::string(kDefaultMnistUrl);
  std::filesystem::path cache_dir = "data";
  std::vector<ManifestEntry> manifest = pinned_mnist_manifest();
  bool allow_network = true;
};

struct MnistSplits {
  RawMnist train;
  RawMnist test;
};

/// Path of a cached file: `<cache_dir>/mnist/<filename>`.
std::filesystem::path mnist_cache_path(const std::filesystem::path& cache_dir,
                                       std::string_view filename);

/// Returns the verified, decompressed payload of one manifest entry,
/// downloading `<source_url>/<filename>` only when the cache lacks it.
/// A cached file failing verification raises kChecksumMismatch; it is not
/// silently replaced.
std::vector<std::uint8_t> fetch_verified(const FetchOptions& options, const ManifestEntry& entry);

MnistSplits fetch_mnist(const FetchOptions& options);

/// Gzips raw (or already gzipped) IDX files found in `source_dir` into the
/// cache after verifying them against the manifest. Returns the files written.
std::vector<std::filesystem::path> import_mnist_files(const FetchOptions& options,
                                                      const std::filesystem::path& source_dir);

}  // namespace mlplab

#endif  // MLPLAB_FETCH_HPP_
