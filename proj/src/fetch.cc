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

#include "mlplab/fetch.hpp"

#include <curl/curl.h>
#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>
#include <zlib.h>

#include <fstream>
#include <iterator>
#include <memory>
#include <mutex>
#include <sstream>

#include "mlplab/errors.hpp"

namespace mlplab {
namespace {

constexpr std::string_view kPinnedManifest =
    R"(# MNIST IDX payloads: filename, decompressed size, SHA-256 of decompressed bytes
train-images-idx3-ubyte.gz 47040016 ba891046e6505d7aadcbbe25680a0738ad16aec93bde7f9b65e87a2fc25776db
train-labels-idx1-ubyte.gz 60008 65a50cbbf4e906d70832878ad85ccda5333a97f0f4c3dd2ef09a8a9eef7101c5
t10k-images-idx3-ubyte.gz 7840016 0fa7898d509279e482958e8ce81c8e77db3f2f8254e26661ceb7762c4d494ce7
t10k-labels-idx1-ubyte.gz 10008 ff7bcfd416de33731a308c3f266cc351222c34898ecbeaf847f06e48f7ec33f2
)";

std::size_t append_to_vector(char* data, std::size_t size, std::size_t count, void* user) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(user);
  out->insert(out->end(), data, data + size * count);
  return size * count;
}

std::vector<std::uint8_t> download(const std::string& url) {
  static std::once_flag init;
  std::call_once(init, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
  std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), curl_easy_cleanup);
  require(curl != nullptr, ErrorCode::kNetworkError, "curl_easy_init failed");
  std::vector<std::uint8_t> body;
  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_CONNECTTIMEOUT, 30L);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, append_to_vector);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &body);
  const CURLcode rc = curl_easy_perform(curl.get());
  if (rc != CURLE_OK) {
    throw Error(ErrorCode::kNetworkError, url + ": " + curl_easy_strerror(rc));
  }
  return body;
}

// flock on `<dir>/.lock`, held for the object's lifetime.
class DirectoryLock {
 public:
  explicit DirectoryLock(const std::filesystem::path& dir) {
    const auto path = dir / ".lock";
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
    require(fd_ >= 0, ErrorCode::kIoError, "cannot open " + path.string());
    ::flock(fd_, LOCK_EX);
  }
  ~DirectoryLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  int fd_ = -1;
};

const ManifestEntry& find_entry(const std::vector<ManifestEntry>& manifest, std::string_view name) {
  for (const auto& entry : manifest) {
    if (entry.filename == name) return entry;
  }
  throw Error(ErrorCode::kConfigError, "manifest has no entry for " + std::string(name));
}

// Decompresses if needed and checks size and digest against `entry`.
std::vector<std::uint8_t> verified_payload(std::vector<std::uint8_t> bytes,
                                           const ManifestEntry& entry, const std::string& origin) {
  if (is_gzip(bytes)) {
    try {
      bytes = gunzip(bytes);
    } catch (const Error& e) {
      throw Error(ErrorCode::kChecksumMismatch, origin + ": " + e.what());
    }
  }
  if (bytes.size() != entry.size) {
    throw Error(ErrorCode::kChecksumMismatch, origin + ": size " + std::to_string(bytes.size()) +
                                                  ", manifest says " + std::to_string(entry.size));
  }
  const std::string digest = sha256_hex(bytes);
  if (digest != entry.sha256) {
    throw Error(ErrorCode::kChecksumMismatch,
                origin + ": sha256 " + digest + ", manifest says " + entry.sha256);
  }
  return bytes;
}

}  // namespace

std::vector<ManifestEntry> parse_data_manifest(std::string_view text) {
  std::vector<ManifestEntry> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    ManifestEntry entry;
    if (!(fields >> entry.filename)) continue;
    std::string extra;
    if (!(fields >> entry.size >> entry.sha256) || (fields >> extra) || entry.sha256.size() != 64) {
      throw Error(ErrorCode::kConfigError, "manifest line " + std::to_string(line_no) + " malformed");
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::string format_data_manifest(std::span<const ManifestEntry> entries) {
  std::string out;
  for (const auto& e : entries) {
    out += e.filename + " " + std::to_string(e.size) + " " + e.sha256 + "\n";
  }
  return out;
}

const std::vector<ManifestEntry>& pinned_mnist_manifest() {
  static const std::vector<ManifestEntry> manifest = parse_data_manifest(kPinnedManifest);
  return manifest;
}

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  require(EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) == 1,
          ErrorCode::kIoError, "sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

bool is_gzip(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 2 && bytes[0] == 0x1f && bytes[1] == 0x8b;
}

std::vector<std::uint8_t> gunzip(std::span<const std::uint8_t> bytes) {
  z_stream stream{};
  require(inflateInit2(&stream, 16 + MAX_WBITS) == Z_OK, ErrorCode::kIoError, "inflateInit2 failed");
  std::vector<std::uint8_t> out;
  std::vector<std::uint8_t> chunk(1 << 20);
  stream.next_in = const_cast<Bytef*>(bytes.data());
  stream.avail_in = static_cast<uInt>(bytes.size());
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    stream.next_out = chunk.data();
    stream.avail_out = static_cast<uInt>(chunk.size());
    rc = inflate(&stream, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&stream);
      throw Error(ErrorCode::kTruncated, "corrupt gzip stream");
    }
    out.insert(out.end(), chunk.begin(), chunk.end() - stream.avail_out);
    if (rc == Z_OK && stream.avail_in == 0 && stream.avail_out != 0) {
      inflateEnd(&stream);
      throw Error(ErrorCode::kTruncated, "gzip stream ended early");
    }
  }
  inflateEnd(&stream);
  return out;
}

std::vector<std::uint8_t> gzip_compress(std::span<const std::uint8_t> bytes) {
  z_stream stream{};
  require(deflateInit2(&stream, Z_BEST_COMPRESSION, Z_DEFLATED, 16 + MAX_WBITS, 8,
                       Z_DEFAULT_STRATEGY) == Z_OK,
          ErrorCode::kIoError, "deflateInit2 failed");
  std::vector<std::uint8_t> out(deflateBound(&stream, static_cast<uLong>(bytes.size())) + 32);
  stream.next_in = const_cast<Bytef*>(bytes.data());
  stream.avail_in = static_cast<uInt>(bytes.size());
  stream.next_out = out.data();
  stream.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&stream, Z_FINISH);
  deflateEnd(&stream);
  require(rc == Z_STREAM_END, ErrorCode::kIoError, "deflate failed");
  out.resize(stream.total_out);
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIoError, "cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::kIoError, "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    require(static_cast<bool>(out), ErrorCode::kIoError, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::filesystem::path mnist_cache_path(const std::filesystem::path& cache_dir,
                                       std::string_view filename) {
  return cache_dir / "mnist" / filename;
}

std::vector<std::uint8_t> fetch_verified(const FetchOptions& options, const ManifestEntry& entry) {
  const auto path = mnist_cache_path(options.cache_dir, entry.filename);
  if (std::filesystem::exists(path)) {
    return verified_payload(read_file_bytes(path), entry, path.string());
  }
  require(options.allow_network, ErrorCode::kNetworkError,
          path.string() + " not cached and network access disabled");
  std::filesystem::create_directories(path.parent_path());
  DirectoryLock lock(path.parent_path());
  // Another process may have filled the cache while we waited on the lock.
  if (std::filesystem::exists(path)) {
    return verified_payload(read_file_bytes(path), entry, path.string());
  }
  std::string url = options.source_url;
  if (!url.empty() && url.back() != '/') url += '/';
  url += entry.filename;
  std::vector<std::uint8_t> body = download(url);
  std::vector<std::uint8_t> payload = verified_payload(body, entry, url);
  write_file_atomic(path, is_gzip(body) ? body : gzip_compress(payload));
  return payload;
}

MnistSplits fetch_mnist(const FetchOptions& options) {
  auto load = [&](std::string_view name) {
    return parse_idx(fetch_verified(options, find_entry(options.manifest, name)));
  };
  auto images = [](IdxContent content, std::string_view name) {
    require(std::holds_alternative<IdxImages>(content), ErrorCode::kBadMagic,
            std::string(name) + " is not an image file");
    return std::get<IdxImages>(std::move(content));
  };
  auto labels = [](IdxContent content, std::string_view name) {
    require(std::holds_alternative<IdxLabels>(content), ErrorCode::kBadMagic,
            std::string(name) + " is not a label file");
    return std::get<IdxLabels>(std::move(content));
  };
  MnistSplits splits;
  splits.train = assemble_mnist(images(load(kTrainImagesFile), kTrainImagesFile),
                                labels(load(kTrainLabelsFile), kTrainLabelsFile), Split::kTrain);
  splits.test = assemble_mnist(images(load(kTestImagesFile), kTestImagesFile),
                               labels(load(kTestLabelsFile), kTestLabelsFile), Split::kTest);
  return splits;
}

std::vector<std::filesystem::path> import_mnist_files(const FetchOptions& options,
                                                      const std::filesystem::path& source_dir) {
  std::vector<std::filesystem::path> written;
  std::filesystem::create_directories(options.cache_dir / "mnist");
  DirectoryLock lock(options.cache_dir / "mnist");
  for (const auto& entry : options.manifest) {
    auto source = source_dir / entry.filename;
    if (!std::filesystem::exists(source)) source = source_dir / source.stem();  // raw, no ".gz"
    require(std::filesystem::exists(source), ErrorCode::kIoError,
            "no " + entry.filename + " (gzipped or raw) in " + source_dir.string());
    const auto bytes = read_file_bytes(source);
    const auto payload = verified_payload(bytes, entry, source.string());
    const auto target = mnist_cache_path(options.cache_dir, entry.filename);
    write_file_atomic(target, is_gzip(bytes) ? bytes : gzip_compress(payload));
    written.push_back(target);
  }
  return written;
}

}  // namespace mlplab
