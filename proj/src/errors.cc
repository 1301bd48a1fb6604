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

#include "mlplab/errors.hpp"

namespace mlplab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kTruncated: return "Truncated";
    case ErrorCode::kNetworkError: return "NetworkError";
    case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kDiverged: return "Diverged";
    case ErrorCode::kVersionUnsupported: return "VersionUnsupported";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kMissingCheckpoint: return "MissingCheckpoint";
    case ErrorCode::kMalformedCsv: return "MalformedCsv";
    case ErrorCode::kNoMisclassifiedSample: return "NoMisclassifiedSample";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace mlplab
