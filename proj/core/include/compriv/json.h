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

#ifndef COMPRIV_JSON_H_
#define COMPRIV_JSON_H_

#include <string>

#include <nlohmann/json.hpp>

#include "compriv/binary.h"
#include "compriv/family.h"
#include "compriv/matrix_core.h"
#include "compriv/mechanism.h"
#include "compriv/pca.h"
#include "compriv/privacy.h"

namespace compriv {

inline constexpr const char* kReportSchema = "compriv/1";

nlohmann::json matrix_to_json(const Matrix& m);

void to_json(nlohmann::json& j, const MatrixNorms& v);
void to_json(nlohmann::json& j, const AssumptionReport& v);
void to_json(nlohmann::json& j, const PerturbationPair& v);
void to_json(nlohmann::json& j, const RegimeDiagnostics& v);
void to_json(nlohmann::json& j, const KronBounds& v);
void to_json(nlohmann::json& j, const PrivacyInputs& v);
void to_json(nlohmann::json& j, const PrivacyReport& v);
void to_json(nlohmann::json& j, const TruncationEstimate& v);
void to_json(nlohmann::json& j, const ConcentrationPoint& v);
void to_json(nlohmann::json& j, const ConcentrationAudit& v);
void to_json(nlohmann::json& j, const PcaReport& v);
void to_json(nlohmann::json& j, const BinaryDelta& v);
void to_json(nlohmann::json& j, const BinaryAlphaReport& v);

// Metadata of a CompressedMatrix, without the entries.
nlohmann::json compressed_summary(const CompressedMatrix& c);

// Seeds are 64-bit; JSON readers commonly lose precision above 2^53, so
// they are written as decimal strings.
std::string seed_string(std::uint64_t seed);

}  // namespace compriv

#endif  // COMPRIV_JSON_H_
