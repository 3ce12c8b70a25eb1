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

#ifndef COMPRIV_ERROR_H_
#define COMPRIV_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace compriv {

enum class ErrorKind {
  // Input validation.
  kZeroColumn,
  kShapeMismatch,
  kNotNormalized,
  kTooFewMembers,
  kDimensionOrder,
  kNotBinary,
  kIndexOutOfRange,
  kTooLargeP,
  kInvalidArgument,
  kIo,
  // Numerical failures.
  kNotSymmetric,
  kNotPositiveDefinite,
  kIndefiniteAlongPath,
  kPreconditionFailed,
  kDegenerateGap,
  kRetriesExhausted,
};

std::string_view error_kind_name(ErrorKind kind);

// True for kinds that signal a numerical condition of the data or of the
// configured bound rather than malformed input.
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace compriv

#endif  // COMPRIV_ERROR_H_
