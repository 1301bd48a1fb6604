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

#ifndef MLPLAB_ERRORS_HPP_
#define MLPLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mlplab {

enum class ErrorCode {
  kInvalidArgument,
  kBadMagic,
  kTruncated,
  kNetworkError,
  kChecksumMismatch,
  kEmptyClass,
  kShapeMismatch,
  kDiverged,
  kVersionUnsupported,
  kSingleClass,
  kDegenerateInput,
  kMissingCheckpoint,
  kMalformedCsv,
  kNoMisclassifiedSample,
  kConfigError,
  kIoError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DivergedError : public Error {
 public:
  DivergedError(int epoch, const std::string& message)
      : Error(ErrorCode::kDiverged, message), epoch_(epoch) {}

  // 1-based epoch in which a non-finite parameter first appeared.
  int epoch() const noexcept { return epoch_; }

 private:
  int epoch_;
};

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace mlplab

#endif  // MLPLAB_ERRORS_HPP_
