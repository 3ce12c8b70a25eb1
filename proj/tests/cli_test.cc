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

// Runs the compriv binary end to end and checks the exit-code contract,
// report contents and determinism.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "compriv/binary.h"
#include "compriv/csv.h"
#include "compriv/matrix_core.h"
#include "compriv/mechanism.h"

namespace compriv {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("compriv_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(COMPRIV_BIN) + " " + args +
                            " >" + path("stdout.txt") + " 2>" + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static json load(const std::string& file) {
    std::ifstream in(file);
    return json::parse(in);
  }

  // Report text with the wall-time field removed.
  static std::string stable(const std::string& file) {
    json j = load(file);
    j["provenance"].erase("wall_time_seconds");
    return j.dump();
  }

  static std::string slurp(const std::string& file) {
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Writes a random +-1 database and its covariance.
  void write_binary(const std::string& x_name, const std::string& s_name,
                    Index n, Index p, std::uint64_t stream) const {
    const DataMatrix x(random_sign_matrix(n, p, stream));
    write_csv_file(path(x_name), x.entries());
    if (!s_name.empty()) {
      write_csv_file(path(s_name), empirical_covariance(x).entries());
    }
  }

  void write_manifest(const std::string& name,
                      std::initializer_list<std::string> members) const {
    json doc{{"members", json::array()}};
    for (const auto& m : members) doc["members"].push_back(m);
    std::ofstream(path(name)) << doc.dump();
  }

  fs::path dir_;
};

TEST_F(CliTest, HelpAndVersion) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run("--version"), 0);
  EXPECT_EQ(slurp(path("stdout.txt")), "0.1.0\n");
  EXPECT_EQ(run("sanitize --help"), 0);
  EXPECT_NE(slurp(path("stdout.txt")).find("--delta-max"), std::string::npos);
}

TEST_F(CliTest, ParseErrorsAreValidationErrors) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("sanitize --m 10"), 2);
  EXPECT_EQ(run("bound --family x.json --m notanumber --out r.json"), 2);
  EXPECT_EQ(run("--threads 0 bound --family x.json --m 5 --out r.json"), 2);
}

TEST_F(CliTest, SanitizeWritesAcceptedOutputAndReport) {
  write_binary("x.csv", "s.csv", 100, 4, 1);
  const std::string args = "sanitize --input " + path("x.csv") + " --reference " +
                           path("s.csv") +
                           " --m 200 --seed 11 --delta-max 0 --output ";
  ASSERT_EQ(run(args + path("xc.csv") + " --report " + path("r.json")), 0);
  const json r = load(path("r.json"));
  EXPECT_EQ(r["schema"], "compriv/1");
  EXPECT_EQ(r["status"], "ok");
  for (const char* key :
       {"retries", "threshold", "achieved_deviation", "seed_used", "fingerprint"}) {
    EXPECT_TRUE(r["result"].contains(key)) << key;
  }
  EXPECT_EQ(r["provenance"]["seed"], "11");
  EXPECT_FALSE(r["provenance"]["config"].contains("output"));

  // The written output is exactly the accepted draw.
  const DataMatrix x(read_csv_file(path("x.csv")));
  const Matrix xc = read_csv_file(path("xc.csv"));
  const std::uint64_t used = std::stoull(r["result"]["seed_used"].get<std::string>());
  EXPECT_EQ(xc, sample_ensemble(100, 200, used) * x.entries());
  const Acceptance again =
      accepts(xc, empirical_covariance(x), r["result"]["threshold"].get<double>());
  EXPECT_TRUE(again.accepted);
  EXPECT_EQ(r["result"]["fingerprint"], fingerprint(x.entries()));

  ASSERT_EQ(run(args + path("xc2.csv") + " --report " + path("r2.json")), 0);
  EXPECT_EQ(stable(path("r.json")), stable(path("r2.json")));
  EXPECT_EQ(slurp(path("xc.csv")), slurp(path("xc2.csv")));
}

TEST_F(CliTest, SanitizeExhaustionWritesNoOutput) {
  write_binary("x.csv", "s.csv", 100, 4, 2);
  EXPECT_EQ(run("sanitize --input " + path("x.csv") + " --reference " +
                path("s.csv") +
                " --m 200 --seed 1 --delta-max 0 --c 0 --max-retries 20"
                " --output " + path("xc.csv") + " --report " + path("r.json")),
            3);
  EXPECT_FALSE(fs::exists(path("xc.csv")));
  const json r = load(path("r.json"));
  EXPECT_EQ(r["status"], "error");
  EXPECT_EQ(r["error"]["kind"], "RetriesExhausted");
  EXPECT_EQ(r["exit_code"], 3);
  EXPECT_FALSE(r.contains("result"));
}

TEST_F(CliTest, SanitizeBelowThresholdNamesThePrecondition) {
  write_binary("x.csv", "s.csv", 100, 4, 3);
  EXPECT_EQ(run("sanitize --input " + path("x.csv") + " --reference " +
                path("s.csv") +
                " --m 20 --seed 1 --delta-max 0 --c 0 --max-retries 5"
                " --output " + path("xc.csv") + " --report " + path("r.json")),
            3);
  const std::string msg = load(path("r.json"))["error"]["message"];
  EXPECT_NE(msg.find("m < 2(C1+C2)ln 2np"), std::string::npos) << msg;
}

TEST_F(CliTest, SanitizeValidationErrors) {
  write_binary("wide.csv", "wide_s.csv", 4, 4, 4);
  EXPECT_EQ(run("sanitize --input " + path("wide.csv") + " --reference " +
                path("wide_s.csv") + " --m 10 --seed 1 --delta-max 0 --output " +
                path("o.csv") + " --report " + path("r.json")),
            2);
  EXPECT_EQ(load(path("r.json"))["error"]["kind"], "DimensionOrder");

  std::ofstream(path("zero.csv")) << "1,0\n2,0\n3,0\n";
  EXPECT_EQ(run("sanitize --input " + path("zero.csv") + " --reference " +
                path("wide_s.csv") + " --m 10 --seed 1 --delta-max 0 --output " +
                path("o.csv") + " --report " + path("r.json")),
            2);
  EXPECT_EQ(load(path("r.json"))["error"]["kind"], "ZeroColumn");

  EXPECT_EQ(run("sanitize --input " + path("missing.csv") + " --reference " +
                path("wide_s.csv") + " --m 10 --seed 1 --delta-max 0 --output " +
                path("o.csv") + " --report " + path("r.json")),
            2);
  EXPECT_EQ(load(path("r.json"))["error"]["kind"], "Io");

  write_binary("x.csv", "", 50, 2, 5);
  std::ofstream(path("sing.csv")) << "1,1\n1,1\n";
  EXPECT_EQ(run("sanitize --input " + path("x.csv") + " --reference " +
                path("sing.csv") + " --m 10 --seed 1 --delta-max 0 --output " +
                path("o.csv") + " --report " + path("r.json")),
            3);
  EXPECT_EQ(load(path("r.json"))["error"]["kind"], "NotPositiveDefinite");
}

TEST_F(CliTest, BoundOnIdenticalMembersIsRenormOnly) {
  write_binary("a.csv", "", 100, 4, 6);
  fs::copy_file(path("a.csv"), path("b.csv"));
  write_manifest("fam.json", {"a.csv", "b.csv"});
  ASSERT_EQ(run("bound --family " + path("fam.json") + " --m 200 --out " +
                path("r.json")),
            0);
  const json r = load(path("r.json"))["result"];
  EXPECT_EQ(r["delta_max"], 0.0);
  const json member = r["members"][0]["report"];
  EXPECT_EQ(member["term_main"], 0.0);
  EXPECT_EQ(member["term_A"], 0.0);
  EXPECT_EQ(member["alpha_bound"], member["renorm_correction"]);
  EXPECT_NEAR(member["renorm_correction"].get<double>(),
              -2.0 * std::log1p(-1e-4), 1e-16);

  write_manifest("one.json", {"a.csv"});
  EXPECT_EQ(run("bound --family " + path("one.json") + " --m 200 --out " +
                path("r1.json")),
            2);
  EXPECT_EQ(load(path("r1.json"))["error"]["kind"], "TooFewMembers");
}

TEST_F(CliTest, BoundOnNeighbors) {
  const DataMatrix x(random_sign_matrix(100, 4, 7));
  const BinaryInstance inst = make_neighbor(x, 3, 1, 8);
  write_csv_file(path("a.csv"), inst.base.entries());
  write_csv_file(path("b.csv"), inst.neighbor.entries());
  write_manifest("fam.json", {"a.csv", "b.csv"});
  ASSERT_EQ(run("bound --family " + path("fam.json") + " --m 200 --out " +
                path("r.json")),
            0);
  const json r = load(path("r.json"))["result"];
  EXPECT_NEAR(r["delta_max"].get<double>(), 0.02, 1e-15);
  EXPECT_EQ(r["members"][0]["row_difference"], 1);
  EXPECT_GT(r["max_alpha_bound"].get<double>(), 0.0);
  EXPECT_EQ(r["truncation"]["m_meets_min"], true);
}

TEST_F(CliTest, AuditPassesAndIsThreadInvariant) {
  const DataMatrix x(random_sign_matrix(100, 4, 9));
  const BinaryInstance inst = make_neighbor(x, 0, 1, 10);
  write_csv_file(path("a.csv"), inst.base.entries());
  write_csv_file(path("b.csv"), inst.neighbor.entries());
  write_manifest("fam.json", {"a.csv", "b.csv"});
  const std::string args = "audit --family " + path("fam.json") +
                           " --m 200 --trials 60 --seed 5 --out ";
  ASSERT_EQ(run("--threads 1 " + args + path("r1.json")), 0);
  ASSERT_EQ(run("--threads 8 " + args + path("r8.json")), 0);
  EXPECT_EQ(stable(path("r1.json")), stable(path("r8.json")));
  const json r = load(path("r1.json"))["result"];
  EXPECT_EQ(r["privacy"][0]["violations"], 0);
  EXPECT_EQ(r["privacy"][0]["accepted"], 120);
  EXPECT_EQ(r["concentration"].size(), 10u);
  EXPECT_EQ(r["violation"], false);
  // The environment variable is the fallback for --threads.
  ASSERT_EQ(run(args + path("re.json") + " && COMPRIV_THREADS=3 " +
                std::string(COMPRIV_BIN) + " " + args + path("re3.json")),
            0);
  EXPECT_EQ(stable(path("r1.json")), stable(path("re3.json")));
}

TEST_F(CliTest, AuditWithZeroRadiusIsAViolation) {
  write_binary("a.csv", "", 100, 4, 11);
  write_binary("b.csv", "", 100, 4, 12);
  write_manifest("fam.json", {"a.csv", "b.csv"});
  EXPECT_EQ(run("audit --family " + path("fam.json") +
                " --m 200 --trials 10 --seed 1 --c 0 --delta-max 0"
                " --max-retries 2 --out " + path("r.json")),
            4);
  const json r = load(path("r.json"));
  EXPECT_EQ(r["status"], "violation");
  EXPECT_EQ(r["result"]["truncation"][0]["estimate"]["rejections"], 10);
  EXPECT_EQ(r["result"]["privacy"][0]["accepted"], 0);
}

TEST_F(CliTest, PcaReportAndDegenerateGap) {
  write_binary("x.csv", "s.csv", 100, 4, 13);
  ASSERT_EQ(run("sanitize --input " + path("x.csv") + " --reference " +
                path("s.csv") + " --m 428 --seed 2 --delta-max 0 --output " +
                path("xc.csv") + " --report " + path("s.json")),
            0);
  const std::string args = "pca --input " + path("x.csv") + " --compressed " +
                           path("xc.csv") + " --d 1 --m 428 --delta-max 0 --out ";
  ASSERT_EQ(run(args + path("p.json")), 0);
  ASSERT_EQ(run(args + path("p2.json")), 0);
  EXPECT_EQ(stable(path("p.json")), stable(path("p2.json")));
  const json r = load(path("p.json"))["result"];
  EXPECT_EQ(r["max_entry_within_tau"], true);
  EXPECT_EQ(r["frobenius_within_p_tau"], true);

  // Orthogonal +-1 columns give an identity covariance: no gap at d = 1.
  std::ofstream(path("orth.csv")) << "1,1\n1,-1\n1,1\n1,-1\n";
  std::ofstream(path("orth_c.csv")) << "1,0\n0,1\n1,1\n";
  EXPECT_EQ(run("pca --input " + path("orth.csv") + " --compressed " +
                path("orth_c.csv") + " --d 1 --m 3 --delta-max 0 --out " +
                path("g.json")),
            3);
  EXPECT_EQ(load(path("g.json"))["error"]["kind"], "DegenerateGap");
  EXPECT_EQ(run(args.substr(0, args.find("--m")) + "--m 5 --delta-max 0 --out " +
                path("bad.json")),
            2);
}

TEST_F(CliTest, BinaryDemoIsDeterministic) {
  const std::string args = "binary-demo --n 100 --p 4 --k 1 --m 200 --seed 7 --out ";
  ASSERT_EQ(run(args + path("a.json")), 0);
  ASSERT_EQ(run(args + path("b.json")), 0);
  EXPECT_EQ(stable(path("a.json")), stable(path("b.json")));
  const json r = load(path("a.json"))["result"];
  EXPECT_NEAR(r["delta"]["ratio_to_stated"].get<double>(), std::sqrt(2.0), 1e-12);
  EXPECT_EQ(r["outputs"]["base"]["within_alpha_bound"], true);
  EXPECT_EQ(r["outputs"]["neighbor"]["within_alpha_bound"], true);
  EXPECT_EQ(run("binary-demo --n 100 --p 4 --k 5 --m 200 --seed 7 --out " +
                path("c.json")),
            2);
  EXPECT_EQ(load(path("c.json"))["error"]["kind"], "IndexOutOfRange");
}

}  // namespace
}  // namespace compriv

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  return RUN_ALL_TESTS();
}
