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

#include "commands.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>

#include <boost/random/uniform_int_distribution.hpp>
#include <nlohmann/json.hpp>

#include "compriv/binary.h"
#include "compriv/csv.h"
#include "compriv/error.h"
#include "compriv/family.h"
#include "compriv/json.h"
#include "compriv/parallel.h"
#include "compriv/pca.h"
#include "compriv/privacy.h"
#include "compriv/rng.h"

#ifndef COMPRIV_VERSION
#define COMPRIV_VERSION "0.0.0"
#endif

namespace compriv::cli {
namespace {

using nlohmann::json;

constexpr std::array<double, 4> kTauGrid{0.2, 0.3, 0.5, 0.8};

struct Outcome {
  json result;
  bool violation = false;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, what);
}

void write_report(const std::string& path, const json& report) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write report '" + path + "'");
  out << report.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::kIo, "failed writing report '" + path + "'");
}

// Runs body, then writes exactly one report: the result, or the error.
int execute(const char* command, const std::string& report_path,
            std::optional<std::uint64_t> seed, json config,
            const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  json report{{"schema", kReportSchema}, {"command", command}};
  int code = kExitOk;
  try {
    Outcome outcome = body();
    code = outcome.violation ? kExitViolation : kExitOk;
    report["status"] = outcome.violation ? "violation" : "ok";
    report["result"] = std::move(outcome.result);
  } catch (const Error& e) {
    code = is_numerical(e.kind()) ? kExitNumerical : kExitValidation;
    report["status"] = "error";
    report["error"] = {{"kind", error_kind_name(e.kind())},
                       {"message", e.what()}};
    std::cerr << "compriv " << command << ": " << e.what() << '\n';
  }
  report["exit_code"] = code;
  const std::chrono::duration<double> wall =
      std::chrono::steady_clock::now() - start;
  report["provenance"] = {
      {"tool_version", tool_version()},
      {"seed", seed ? json(seed_string(*seed)) : json(nullptr)},
      {"config", std::move(config)},
      {"wall_time_seconds", wall.count()}};
  if (report_path.empty()) {
    std::cerr << "compriv " << command << ": no report path given\n";
    return code == kExitOk ? kExitValidation : code;
  }
  try {
    write_report(report_path, report);
  } catch (const Error& e) {
    std::cerr << "compriv " << command << ": " << e.what() << '\n';
    return code == kExitOk ? kExitValidation : code;
  }
  return code;
}

void check_m(Index m) { require(m >= 1, "--m must be >= 1"); }

void check_c(double c) {
  require(std::isfinite(c) && c >= 0.0, "--c must be finite and >= 0");
}

json truncation_block(Index n, Index p, Index m, double c) {
  const double threshold = min_m_for_truncation_bound(n, p);
  return {{"min_m", threshold},
          {"m_meets_min", static_cast<double>(m) >= threshold},
          {"prob_bound", analytic_truncation_bound(n, p, m, c)}};
}

}  // namespace

const char* tool_version() { return COMPRIV_VERSION; }

int run_sanitize(const SanitizeArgs& a) {
  const json config{{"input", a.input},         {"reference", a.reference},
                    {"m", a.m},                 {"delta_max", a.delta_max},
                    {"c", a.c},                 {"max_retries", a.max_retries},
                    {"header", a.header}};
  return execute("sanitize", a.report, a.seed, config, [&] {
    check_m(a.m);
    check_c(a.c);
    require(a.delta_max >= 0.0, "--delta-max must be >= 0");
    const DataMatrix x = normalize_columns(read_csv_file(a.input, a.header));
    const CovarianceMatrix ref(read_csv_file(a.reference, a.header));
    ProjectionConfig cfg;
    cfg.m = a.m;
    cfg.seed = a.seed;
    cfg.c = a.c;
    cfg.max_retries = a.max_retries;
    const CompressedMatrix out = sanitize(x, ref, cfg, a.delta_max);
    write_csv_file(a.output, out.entries);
    json result = compressed_summary(out);
    result["n"] = x.n();
    result["p"] = x.p();
    result["m"] = a.m;
    result["truncation"] = truncation_block(x.n(), x.p(), a.m, a.c);
    return Outcome{std::move(result), false};
  });
}

int run_bound(const BoundArgs& a, int threads) {
  const json config{{"family", a.family}, {"m", a.m}, {"c", a.c}};
  return execute("bound", a.out, std::nullopt, config, [&] {
    check_m(a.m);
    check_c(a.c);
    const DatabaseFamily family = load_family_manifest(a.family, threads);
    const Index n = family.n(), p = family.p();
    const CovarianceMatrix s1 = empirical_covariance(family.reference());
    const double trunc = analytic_truncation_bound(n, p, a.m, a.c);
    json members = json::array();
    double worst = 0.0, worst_bounded = 0.0;
    for (std::size_t i = 0; i < family.members().size(); ++i) {
      if (i == family.reference_index()) continue;
      const DataMatrix& xi = family.members()[i];
      const PrivacyReport r =
          alpha_bound(s1, empirical_covariance(xi), n, p, a.m,
                      family.delta_max(), a.c, trunc);
      worst = std::max(worst, r.alpha_bound);
      worst_bounded = std::max(worst_bounded, r.alpha_bound_bounded);
      members.push_back({{"member", i},
                         {"row_difference", row_difference(family.reference(), xi)},
                         {"report", r}});
    }
    json result{{"n", n},
                {"p", p},
                {"m", a.m},
                {"c", a.c},
                {"delta_max", family.delta_max()},
                {"reference_index", family.reference_index()},
                {"truncation", truncation_block(n, p, a.m, a.c)},
                {"members", std::move(members)},
                {"max_alpha_bound", worst},
                {"max_alpha_bound_bounded", worst_bounded}};
    return Outcome{std::move(result), false};
  });
}

int run_audit(const AuditArgs& a, int threads) {
  const json config{
      {"family", a.family},
      {"m", a.m},
      {"trials", a.trials},
      {"c", a.c},
      {"delta_max", a.delta_max ? json(*a.delta_max) : json(nullptr)},
      {"max_retries", a.max_retries}};
  return execute("audit", a.out, a.seed, config, [&] {
    check_m(a.m);
    check_c(a.c);
    require(a.trials >= 1, "--trials must be >= 1");
    require(!a.delta_max || *a.delta_max >= 0.0, "--delta-max must be >= 0");
    const DatabaseFamily family = load_family_manifest(a.family, threads);
    const Index n = family.n(), p = family.p();
    const double delta = a.delta_max.value_or(family.delta_max());
    const DataMatrix& ref = family.reference();
    const CovarianceMatrix s1 = empirical_covariance(ref);
    const double trunc = analytic_truncation_bound(n, p, a.m, a.c);
    bool violation = false;

    // Rejection frequency of the truncation step, per member.
    json truncation = json::array();
    for (std::size_t i = 0; i < family.members().size(); ++i) {
      ProjectionConfig cfg;
      cfg.m = a.m;
      cfg.c = a.c;
      cfg.seed = derive_stream(a.seed, {1, i});
      const TruncationEstimate est = estimate_truncation_prob(
          family.members()[i], s1, cfg, delta, a.trials, threads);
      violation = violation || est.exceeds;
      truncation.push_back({{"member", i}, {"estimate", est}});
    }

    // Inner-product concentration on unit-normalized reference columns.
    json concentration = json::array();
    const double root_n = std::sqrt(static_cast<double>(n));
    for (Index j = 0; j < p; ++j) {
      for (Index k = j; k < p; ++k) {
        const ConcentrationAudit audit = concentration_audit(
            ref.entries().col(j) / root_n, ref.entries().col(k) / root_n, a.m,
            kTauGrid, a.trials,
            derive_stream(a.seed, {2, static_cast<std::uint64_t>(j),
                                   static_cast<std::uint64_t>(k)}),
            threads);
        violation = violation || audit.any_flagged;
        concentration.push_back({{"columns", {j, k}}, {"audit", audit}});
      }
    }

    // Privacy loss on accepted outputs for the reference and each member,
    // against the bound for that pair.
    json privacy = json::array();
    for (std::size_t i = 0; i < family.members().size(); ++i) {
      if (i == family.reference_index()) continue;
      const DataMatrix& xi = family.members()[i];
      const CovarianceMatrix si = empirical_covariance(xi);
      const PrivacyReport bound =
          alpha_bound(s1, si, n, p, a.m, delta, a.c, trunc);
      struct Tally {
        std::int64_t accepted = 0;
        std::int64_t exhausted = 0;
        std::int64_t violations = 0;
        double max_abs_ratio = 0.0;
      };
      const Tally tally = parallel_reduce(
          a.trials, threads, Tally{},
          [&](std::int64_t begin, std::int64_t end) {
            Tally local;
            for (std::int64_t t = begin; t < end; ++t) {
              for (std::uint64_t side = 0; side < 2; ++side) {
                ProjectionConfig cfg;
                cfg.m = a.m;
                cfg.c = a.c;
                cfg.max_retries = a.max_retries;
                cfg.seed = derive_stream(
                    a.seed, {3, i, static_cast<std::uint64_t>(t), side});
                try {
                  const CompressedMatrix out =
                      sanitize(side == 0 ? ref : xi, s1, cfg, delta);
                  const double ratio =
                      std::abs(log_density_ratio(out, s1, si, trunc, trunc));
                  ++local.accepted;
                  local.max_abs_ratio = std::max(local.max_abs_ratio, ratio);
                  if (ratio > bound.alpha_bound) ++local.violations;
                } catch (const Error& e) {
                  if (e.kind() != ErrorKind::kRetriesExhausted) throw;
                  ++local.exhausted;
                }
              }
            }
            return local;
          },
          [](Tally x, const Tally& y) {
            x.accepted += y.accepted;
            x.exhausted += y.exhausted;
            x.violations += y.violations;
            x.max_abs_ratio = std::max(x.max_abs_ratio, y.max_abs_ratio);
            return x;
          });
      violation = violation || tally.violations > 0;
      privacy.push_back(
          {{"member", i},
           {"alpha_bound", bound.alpha_bound},
           {"alpha_bound_bounded", bound.alpha_bound_bounded},
           {"sanitizations", 2 * a.trials},
           {"accepted", tally.accepted},
           {"retries_exhausted", tally.exhausted},
           {"violations", tally.violations},
           {"max_abs_log_ratio", tally.max_abs_ratio},
           {"max_ratio_to_bound", bound.alpha_bound > 0.0
                                      ? json(tally.max_abs_ratio /
                                             bound.alpha_bound)
                                      : json(nullptr)}});
    }

    json result{{"n", n},
                {"p", p},
                {"m", a.m},
                {"c", a.c},
                {"delta_max", delta},
                {"reference_index", family.reference_index()},
                {"radius", acceptance_radius(n, p, a.m, delta, a.c)},
                {"truncation_bound", truncation_block(n, p, a.m, a.c)},
                {"truncation", std::move(truncation)},
                {"concentration", std::move(concentration)},
                {"privacy", std::move(privacy)},
                {"violation", violation}};
    return Outcome{std::move(result), violation};
  });
}

int run_pca(const PcaArgs& a) {
  const json config{{"input", a.input},   {"compressed", a.compressed},
                    {"d", a.d},           {"m", a.m},
                    {"delta_max", a.delta_max}, {"c", a.c},
                    {"header", a.header}};
  return execute("pca", a.out, std::nullopt, config, [&] {
    check_m(a.m);
    check_c(a.c);
    require(a.delta_max >= 0.0, "--delta-max must be >= 0");
    const DataMatrix x = normalize_columns(read_csv_file(a.input, a.header));
    const Matrix xc = read_csv_file(a.compressed, a.header);
    const PcaReport r = compressed_pca_report(x, xc, a.d, x.n(), x.p(), a.m,
                                              a.delta_max, a.c);
    json result = r;
    result["n"] = x.n();
    result["p"] = x.p();
    result["m"] = a.m;
    return Outcome{std::move(result), false};
  });
}

int run_binary_demo(const BinaryDemoArgs& a) {
  const json config{{"n", a.n}, {"p", a.p}, {"k", a.k}, {"m", a.m},
                    {"d", a.d}, {"c", a.c}, {"max_retries", a.max_retries}};
  return execute("binary-demo", a.out, a.seed, config, [&] {
    check_m(a.m);
    check_c(a.c);
    require(a.n >= 1 && a.p >= 1, "--n and --p must be >= 1");
    const DataMatrix base(random_sign_matrix(a.n, a.p, derive_stream(a.seed, {1})));
    CounterStream row_bits(derive_stream(a.seed, {2}));
    const Index row =
        boost::random::uniform_int_distribution<Index>(0, a.n - 1)(row_bits);
    const BinaryInstance inst =
        make_neighbor(base, row, a.k, derive_stream(a.seed, {3}));
    const BinaryDelta delta = binary_delta_exact(inst);
    const BinaryAlphaReport alpha = binary_alpha_report(inst, a.m, a.c);

    const CovarianceMatrix s1 = empirical_covariance(inst.base);
    const CovarianceMatrix s2 = empirical_covariance(inst.neighbor);
    const double dmax = alpha.general.inputs.delta_max;
    const double trunc = alpha.general.inputs.truncation_prob_bound;
    bool violation = false;
    json outputs = json::object();
    for (std::uint64_t side = 0; side < 2; ++side) {
      const DataMatrix& x = side == 0 ? inst.base : inst.neighbor;
      ProjectionConfig cfg;
      cfg.m = a.m;
      cfg.c = a.c;
      cfg.max_retries = a.max_retries;
      cfg.seed = derive_stream(a.seed, {4, side});
      const CompressedMatrix out = sanitize(x, s1, cfg, dmax);
      const double ratio = log_density_ratio(out, s1, s2, trunc, trunc);
      const bool within = std::abs(ratio) <= alpha.general.alpha_bound;
      violation = violation || !within;
      json entry = compressed_summary(out);
      entry["log_density_ratio"] = ratio;
      entry["within_alpha_bound"] = within;
      entry["pca"] = compressed_pca_report(x, out.entries, a.d, a.n, a.p, a.m,
                                           dmax, a.c);
      outputs[side == 0 ? "base" : "neighbor"] = std::move(entry);
    }
    json result{{"n", a.n},
                {"p", a.p},
                {"m", a.m},
                {"k", a.k},
                {"tau_flip", inst.tau_flip},
                {"flipped_row", inst.flipped_row},
                {"flipped_columns", inst.flipped_columns},
                {"delta", delta},
                {"privacy", alpha},
                {"outputs", std::move(outputs)}};
    return Outcome{std::move(result), violation};
  });
}

}  // namespace compriv::cli
