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

// compriv: compress a database by Gaussian projection with tail truncation,
// bound the privacy loss, and audit the bounds by simulation.

#include <iostream>

#include "CLI11.hpp"
#include "commands.h"

namespace {

using compriv::cli::kExitValidation;

void add_m_and_c(CLI::App* cmd, compriv::Index& m, double& c) {
  cmd->add_option("--m", m, "Rows of the compressed output")->required();
  cmd->add_option("--c", c, "Radius constant C")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-preserving compression by Gaussian random projection"};
  app.set_version_flag("--version", compriv::cli::tool_version());
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 1;
  app.add_option("--threads", threads, "Worker threads for Monte Carlo loops")
      ->envname("COMPRIV_THREADS")
      ->check(CLI::PositiveNumber);

  compriv::cli::SanitizeArgs san;
  auto* sanitize_cmd =
      app.add_subcommand("sanitize", "Compress X, retrying until accepted");
  sanitize_cmd->add_option("--input", san.input, "Data CSV (n x p)")
      ->required();
  sanitize_cmd->add_option("--reference", san.reference,
                           "Reference covariance CSV (p x p)")
      ->required();
  sanitize_cmd->add_option("--seed", san.seed, "Seed")->required();
  sanitize_cmd->add_option("--delta-max", san.delta_max,
                           "Covariance distance bound")
      ->required();
  sanitize_cmd->add_option("--output", san.output, "Compressed CSV (m x p)")
      ->required();
  sanitize_cmd->add_option("--report", san.report, "JSON report")->required();
  sanitize_cmd->add_option("--max-retries", san.max_retries)
      ->capture_default_str();
  sanitize_cmd->add_flag("--header", san.header, "Skip one header line");
  add_m_and_c(sanitize_cmd, san.m, san.c);

  compriv::cli::BoundArgs bnd;
  auto* bound_cmd =
      app.add_subcommand("bound", "Privacy bound for a database family");
  bound_cmd->add_option("--family", bnd.family, "Family manifest JSON")
      ->required();
  bound_cmd->add_option("--out", bnd.out, "JSON report")->required();
  add_m_and_c(bound_cmd, bnd.m, bnd.c);

  compriv::cli::AuditArgs aud;
  auto* audit_cmd =
      app.add_subcommand("audit", "Monte Carlo audit of every bound");
  audit_cmd->add_option("--family", aud.family, "Family manifest JSON")
      ->required();
  audit_cmd->add_option("--trials", aud.trials, "Trials per check")
      ->required();
  audit_cmd->add_option("--seed", aud.seed, "Seed")->required();
  audit_cmd->add_option("--out", aud.out, "JSON report")->required();
  audit_cmd->add_option("--delta-max", aud.delta_max,
                        "Override the family's delta_max");
  audit_cmd->add_option("--max-retries", aud.max_retries)
      ->capture_default_str();
  add_m_and_c(audit_cmd, aud.m, aud.c);

  compriv::cli::PcaArgs pca;
  auto* pca_cmd =
      app.add_subcommand("pca", "Eigenprojector certificate for an output");
  pca_cmd->add_option("--input", pca.input, "Data CSV (n x p)")->required();
  pca_cmd->add_option("--compressed", pca.compressed, "Compressed CSV (m x p)")
      ->required();
  pca_cmd->add_option("--d", pca.d, "Subspace dimension")->required();
  pca_cmd->add_option("--delta-max", pca.delta_max, "Covariance distance bound")
      ->required();
  pca_cmd->add_option("--out", pca.out, "JSON report")->required();
  pca_cmd->add_flag("--header", pca.header, "Skip one header line");
  add_m_and_c(pca_cmd, pca.m, pca.c);

  compriv::cli::BinaryDemoArgs demo;
  auto* demo_cmd = app.add_subcommand(
      "binary-demo", "Random +-1 database and a one-row neighbor");
  demo_cmd->add_option("--n", demo.n, "Rows")->required();
  demo_cmd->add_option("--p", demo.p, "Columns")->required();
  demo_cmd->add_option("--k", demo.k, "Bits flipped in one row")->required();
  demo_cmd->add_option("--seed", demo.seed, "Seed")->required();
  demo_cmd->add_option("--out", demo.out, "JSON report")->required();
  demo_cmd->add_option("--d", demo.d, "Subspace dimension for PCA")
      ->capture_default_str();
  demo_cmd->add_option("--max-retries", demo.max_retries)
      ->capture_default_str();
  add_m_and_c(demo_cmd, demo.m, demo.c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  if (*sanitize_cmd) return compriv::cli::run_sanitize(san);
  if (*bound_cmd) return compriv::cli::run_bound(bnd, threads);
  if (*audit_cmd) return compriv::cli::run_audit(aud, threads);
  if (*pca_cmd) return compriv::cli::run_pca(pca);
  return compriv::cli::run_binary_demo(demo);
}
