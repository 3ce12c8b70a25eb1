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

#ifndef COMPRIV_TOOLS_COMMANDS_H_
#define COMPRIV_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>

#include "compriv/mechanism.h"

namespace compriv::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitViolation = 4;

struct SanitizeArgs {
  std::string input;
  std::string reference;
  std::string output;
  std::string report;
  Index m = 0;
  std::uint64_t seed = 0;
  double delta_max = 0.0;
  double c = default_radius_constant();
  int max_retries = 1000;
  bool header = false;
};

struct BoundArgs {
  std::string family;
  std::string out;
  Index m = 0;
  double c = default_radius_constant();
};

struct AuditArgs {
  std::string family;
  std::string out;
  Index m = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double c = default_radius_constant();
  std::optional<double> delta_max;  // family value when absent
  int max_retries = 1000;
};

struct PcaArgs {
  std::string input;
  std::string compressed;
  std::string out;
  Index d = 1;
  Index m = 0;
  double delta_max = 0.0;
  double c = default_radius_constant();
  bool header = false;
};

struct BinaryDemoArgs {
  std::string out;
  Index n = 0;
  Index p = 0;
  Index k = 0;
  Index m = 0;
  Index d = 1;
  std::uint64_t seed = 0;
  double c = default_radius_constant();
  int max_retries = 1000;
};

// Each runs one subcommand, writes its JSON report and returns the exit code.
int run_sanitize(const SanitizeArgs& args);
int run_bound(const BoundArgs& args, int threads);
int run_audit(const AuditArgs& args, int threads);
int run_pca(const PcaArgs& args);
int run_binary_demo(const BinaryDemoArgs& args);

const char* tool_version();

}  // namespace compriv::cli

#endif  // COMPRIV_TOOLS_COMMANDS_H_
