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

#include "compriv/json.h"

#include <cstdint>
#include <limits>

#include <gtest/gtest.h>

namespace compriv {
namespace {

using nlohmann::json;

TEST(JsonTest, MatrixRoundTrip) {
  Matrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6.5;
  const json j = matrix_to_json(m);
  ASSERT_EQ(j.size(), 2u);
  ASSERT_EQ(j[1].size(), 3u);
  EXPECT_EQ(j[1][2].get<double>(), 6.5);
  EXPECT_EQ(j[0][1].get<double>(), 2.0);
}

TEST(JsonTest, SeedsAreStringsWithoutPrecisionLoss) {
  const std::uint64_t big = std::numeric_limits<std::uint64_t>::max();
  EXPECT_EQ(seed_string(big), "18446744073709551615");
  CompressedMatrix c;
  c.seed_used = big;
  c.retries = 2;
  c.threshold = 0.5;
  c.achieved_deviation = 0.25;
  c.source_fingerprint = "00ff";
  const json j = compressed_summary(c);
  EXPECT_EQ(j["seed_used"], "18446744073709551615");
  EXPECT_EQ(j["retries"], 2);
  EXPECT_EQ(j["threshold"], 0.5);
  EXPECT_EQ(j["achieved_deviation"], 0.25);
  EXPECT_EQ(j["fingerprint"], "00ff");
}

TEST(JsonTest, NonFiniteAndOptionalBecomeNull) {
  AssumptionReport a;
  a.gamma_spectral = std::numeric_limits<double>::infinity();
  EXPECT_TRUE(json(a)["gamma_spectral"].is_null());
  a.gamma_spectral = 0.5;
  EXPECT_EQ(json(a)["gamma_spectral"], 0.5);

  PcaReport p;
  EXPECT_TRUE(json(p)["projector_distance"].is_null());
  EXPECT_FALSE(json(p).contains("tau_bound"));
  p.projector_distance = 0.1;
  p.tau_bound = 0.3;
  p.max_entry_within_tau = true;
  const json jp = p;
  EXPECT_EQ(jp["projector_distance"], 0.1);
  EXPECT_EQ(jp["tau_bound"], 0.3);
  EXPECT_EQ(jp["max_entry_within_tau"], true);
}

TEST(JsonTest, NestedReports) {
  PrivacyReport r;
  r.alpha_bound = 1.5;
  r.inputs.m = 200;
  r.kron_bounds.upper = 0.2;
  BinaryAlphaReport b;
  b.general = r;
  b.cross_check_residual = 1e-16;
  const json j = b;
  EXPECT_EQ(j["general"]["alpha_bound"], 1.5);
  EXPECT_EQ(j["general"]["inputs"]["m"], 200);
  EXPECT_EQ(j["general"]["kron_bounds"]["upper"], 0.2);
  EXPECT_TRUE(j["general"]["assumption"].is_object());
  EXPECT_TRUE(j["general"]["regime"].contains("pca_m_ratio"));

  ConcentrationAudit audit;
  audit.points.resize(2);
  audit.points[1].tau_dev = 0.3;
  EXPECT_EQ(json(audit)["points"][1]["tau_dev"], 0.3);
  EXPECT_EQ(std::string(kReportSchema), "compriv/1");
}

}  // namespace
}  // namespace compriv
