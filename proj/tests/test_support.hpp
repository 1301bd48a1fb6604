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

// Shared helpers for the unit tests.

#ifndef MLPLAB_TESTS_TEST_SUPPORT_HPP_
#define MLPLAB_TESTS_TEST_SUPPORT_HPP_

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "mlplab/errors.hpp"
#include "mlplab/fetch.hpp"
#include "mlplab/mnist.hpp"

namespace mlplab::testing {

inline std::filesystem::path data_dir() {
  if (const char* env = std::getenv("MLPLAB_DATA_DIR")) return env;
  return MLPLAB_TEST_DATA_DIR;
}

inline bool mnist_cached() {
  for (const auto& e : pinned_mnist_manifest()) {
    if (!std::filesystem::exists(mnist_cache_path(data_dir(), e.filename))) return false;
  }
  return true;
}

// Real MNIST from the local cache, loaded once per test binary.
inline const MnistSplits& cached_mnist() {
  static const MnistSplits splits = [] {
    FetchOptions options;
    options.cache_dir = data_dir();
    options.allow_network = false;
    return fetch_mnist(options);
  }();
  return splits;
}

#define MLPLAB_REQUIRE_MNIST()                                                  \
  do {                                                                          \
    if (!::mlplab::testing::mnist_cached())                                     \
      GTEST_SKIP() << "MNIST cache missing; run `mlplab fetch` first";          \
  } while (0)

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  auto dir = std::filesystem::temp_directory_path() / "mlplab_tests" /
             (std::string(info->test_suite_name()) + "." + info->name() + "." + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Code of the mlplab::Error thrown by fn, or nullopt when nothing is thrown.
template <typename Fn>
std::optional<ErrorCode> error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace mlplab::testing

#endif  // MLPLAB_TESTS_TEST_SUPPORT_HPP_
