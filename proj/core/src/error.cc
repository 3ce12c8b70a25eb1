// Copyright 2026 The compriv Authors
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

#include "compriv/error.h"

namespace compriv {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kZeroColumn: return "ZeroColumn";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kNotNormalized: return "NotNormalized";
    case ErrorKind::kTooFewMembers: return "TooFewMembers";
    case ErrorKind::kDimensionOrder: return "DimensionOrder";
    case ErrorKind::kNotBinary: return "NotBinary";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kTooLargeP: return "TooLargeP";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kIo: return "Io";
    case ErrorKind::kNotSymmetric: return "NotSymmetric";
    case ErrorKind::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::kIndefiniteAlongPath: return "IndefiniteAlongPath";
    case ErrorKind::kPreconditionFailed: return "PreconditionFailed";
    case ErrorKind::kDegenerateGap: return "DegenerateGap";
    case ErrorKind::kRetriesExhausted: return "RetriesExhausted";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotSymmetric:
    case ErrorKind::kNotPositiveDefinite:
    case ErrorKind::kIndefiniteAlongPath:
    case ErrorKind::kPreconditionFailed:
    case ErrorKind::kDegenerateGap:
    case ErrorKind::kRetriesExhausted:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
      kind_(kind) {}

}  // namespace compriv
