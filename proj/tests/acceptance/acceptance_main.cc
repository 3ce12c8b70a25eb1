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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/LU>
#include <nlohmann/json.hpp>

#include "compriv/binary.h"
#include "compriv/csv.h"
#include "compriv/mechanism.h"
#include "compriv/pca.h"
#include "compriv/privacy.h"
#include "compriv/rng.h"
#include "testing/oracles.h"

namespace compriv {
namespace {

using Clock = std::chrono::steady_clock;

int worker_threads() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// 1. Rejection frequency of the truncation step.
Verdict truncation_probability() {
  const Index n = 100, p = 4, m = 200;
  const std::int64_t trials = 100000;
  const DataMatrix x(random_sign_matrix(n, p, 0xacc1));
  ProjectionConfig cfg;
  cfg.m = m;
  cfg.seed = 0xacc1;
  const auto start = Clock::now();
  const TruncationEstimate est = estimate_truncation_prob(
      x, empirical_covariance(x), cfg, 0.0, trials, worker_threads());
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  const double threshold = min_m_for_truncation_bound(n, p);
  const double limit = three_sigma_limit(1.0 / (n * n), trials);
  return {static_cast<double>(m) >= threshold && est.estimate <= limit,
          fmt("m=%ld vs min m %.2f, rejections %ld/%ld, frequency %.3g <= %.3g, "
              "wilson95 %.3g, %.1f s",
              static_cast<long>(m), threshold, static_cast<long>(est.rejections),
              static_cast<long>(trials), est.estimate, limit,
              est.wilson_upper_95, secs)};
}

// 2. Tails of the compressed inner product.
Verdict concentration() {
  const Index n = 100, m = 200;
  const std::int64_t trials = 10000;
  const std::array<double, 4> grid{0.2, 0.3, 0.5, 0.8};
  std::mt19937_64 gen(0xacc2);
  int flagged = 0;
  double worst_ratio = 0.0;  // empirical tail / limit
  for (int pair = 0; pair < 20; ++pair) {
    Vector x = testing::gaussian_matrix(n, 1, gen).col(0);
    Vector y = testing::gaussian_matrix(n, 1, gen).col(0);
    x.normalize();
    y.normalize();
    const ConcentrationAudit audit = concentration_audit(
        x, y, m, grid, trials, derive_stream(0xacc2, {static_cast<std::uint64_t>(pair)}),
        worker_threads());
    for (const ConcentrationPoint& pt : audit.points) {
      flagged += pt.flagged;
      worst_ratio = std::max(worst_ratio, pt.empirical_tail / pt.three_sigma_limit);
    }
  }
  return {flagged == 0,
          fmt("20 pairs x 4 tau, %ld trials each, %d flagged, "
              "max tail/limit %.3f",
              static_cast<long>(trials), flagged, worst_ratio)};
}

// 3. Kronecker-integral sandwich and quadrature agreement.
Verdict kron_sandwich() {
  std::mt19937_64 gen(0xacc3);
  std::uniform_real_distribution<double> frac(0.05, 1.0);
  int violations = 0, quad_misses = 0;
  double worst_rel = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Index p = 2 + trial % 4;
    const CovarianceMatrix s1(testing::random_spd(p, gen, 0.5, 2.0));
    Matrix g = testing::random_symmetric(p, gen);
    g *= frac(gen) * 0.2 / (s1.eigmax() * matrix_norms(g).spectral);
    const CovarianceMatrix sj((s1.inverse() + g).inverse());
    const double exact = kron_A_exact(s1, sj);
    const double quad = kron_A_quadrature(s1, sj, 64);
    const KronBounds b = kron_A_bounds(s1, sj);
    if (!(b.lower <= exact && exact <= b.upper)) ++violations;
    const double rel = std::abs(quad - exact) / std::abs(exact);
    worst_rel = std::max(worst_rel, rel);
    if (!(rel <= 1e-8)) ++quad_misses;
  }
  return {violations == 0 && quad_misses == 0,
          fmt("1000 pairs, p in 2..5: %d sandwich violations, %d quadrature "
              "misses, max relative gap %.2e",
              violations, quad_misses, worst_rel)};
}

// 4. Privacy loss of accepted outputs on one-bit binary neighbors.
Verdict privacy_audit() {
  const Index n = 100, p = 4, m = 200;
  const int pairs = 600;
  const double c = default_radius_constant();
  std::int64_t sanitizations = 0, violations = 0;
  double max_ratio = 0.0, max_to_bound = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const std::uint64_t seed = derive_stream(0xacc4, {static_cast<std::uint64_t>(i)});
    const DataMatrix base(random_sign_matrix(n, p, derive_stream(seed, {0})));
    const BinaryInstance inst =
        make_neighbor(base, i % n, 1, derive_stream(seed, {1}));
    const CovarianceMatrix s1 = empirical_covariance(inst.base);
    const CovarianceMatrix s2 = empirical_covariance(inst.neighbor);
    const double dmax = covariance_distance(inst.base, inst.neighbor);
    const double trunc = analytic_truncation_bound(n, p, m, c);
    const double alpha =
        alpha_bound(s1, s2, n, p, m, dmax, c, trunc).alpha_bound;
    for (std::uint64_t side = 0; side < 2; ++side) {
      ProjectionConfig cfg;
      cfg.m = m;
      cfg.seed = derive_stream(seed, {2, side});
      const CompressedMatrix out =
          sanitize(side == 0 ? inst.base : inst.neighbor, s1, cfg, dmax);
      const double ratio = std::abs(log_density_ratio(out, s1, s2, trunc, trunc));
      ++sanitizations;
      violations += ratio > alpha;
      max_ratio = std::max(max_ratio, ratio);
      max_to_bound = std::max(max_to_bound, ratio / alpha);
    }
  }
  return {violations == 0 && sanitizations >= 1000,
          fmt("%ld sanitizations, %ld violations, max |log ratio| %.4f, "
              "max ratio/bound %.4f",
              static_cast<long>(sanitizations), static_cast<long>(violations),
              max_ratio, max_to_bound)};
}

// 5. Eigenprojector certificate, random and on compressed outputs.
Verdict pca_certificate() {
  std::mt19937_64 gen(0xacc5);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  int cases = 0, violations = 0;
  while (cases < 1000) {
    const Index p = 2 + static_cast<Index>(gen() % 7);
    const Index d = 1 + static_cast<Index>(gen() % static_cast<unsigned>(p - 1));
    const Matrix a = testing::random_spd(p, gen, 0.2, 4.0);
    const Vector eigs = sym_eig(a).values;
    const double delta_d = (eigs(d - 1) - eigs(d)) / 2.0;
    if (delta_d < 1e-3) continue;
    Matrix b = testing::random_symmetric(p, gen);
    b *= frac(gen) * (delta_d / 2.0) / b.norm();
    const PcaReport r = zb_certificate(a, b, d);
    if (!r.applicable) continue;
    ++cases;
    violations += !r.zb_holds;
  }

  int runs = 0, chain_failures = 0;
  double worst = 0.0;  // max_entry(B) / tau
  const double c = default_radius_constant();
  for (Index n : {100, 200}) {
    const Index p = 4;
    const Index m = static_cast<Index>(
        std::ceil(4.0 * p * p * std::log(2.0 * n * p)));
    for (int i = 0; i < 50; ++i) {
      const std::uint64_t seed =
          derive_stream(0xacc5, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i)});
      const DataMatrix base(random_sign_matrix(n, p, derive_stream(seed, {0})));
      const BinaryInstance inst = make_neighbor(base, 0, 1, derive_stream(seed, {1}));
      const double dmax = covariance_distance(inst.base, inst.neighbor);
      const CovarianceMatrix s1 = empirical_covariance(inst.base);
      for (std::uint64_t side = 0; side < 2; ++side) {
        const DataMatrix& x = side == 0 ? inst.base : inst.neighbor;
        ProjectionConfig cfg;
        cfg.m = m;
        cfg.seed = derive_stream(seed, {2, side});
        const CompressedMatrix out = sanitize(x, s1, cfg, dmax);
        const PcaReport r =
            compressed_pca_report(x, out.entries, 1, n, p, m, dmax, c);
        ++runs;
        chain_failures += !(r.max_entry_within_tau && r.frobenius_within_p_tau &&
                            r.frobenius_within_p_max_entry);
        worst = std::max(worst, r.b_max_entry / *r.tau_bound);
      }
    }
  }
  return {violations == 0 && chain_failures == 0,
          fmt("%d random cases with %d violations; %d compressed runs at "
              "m = ceil(4p^2 ln 2np) with %d chain failures, max |B|/tau %.3f",
              cases, violations, runs, chain_failures, worst)};
}

// 6. Binary example: closed form, ratio to the stated formula, symmetry.
Verdict binary_example() {
  bool ok = true;
  std::string detail;
  double recorded_ratio = 0.0;
  for (auto [n, p] : {std::pair<Index, Index>{100, 4}, {50, 7}}) {
    double max_spread = 0.0, max_entry_excess = -1.0, sym_gap = 0.0;
    double ratio_lo = 1e9, ratio_hi = 0.0;
    for (int base_id = 0; base_id < 1000; ++base_id) {
      const std::uint64_t seed =
          derive_stream(0xacc6, {static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(base_id)});
      const DataMatrix x(random_sign_matrix(n, p, seed));
      const Index row = base_id % n;
      std::vector<double> by_k;
      for (Index k = 0; k <= p; ++k) {
        const BinaryDelta d = binary_delta_exact(
            make_neighbor(x, row, k, derive_stream(seed, {static_cast<std::uint64_t>(k)})));
        by_k.push_back(d.delta_frobenius);
        max_spread = std::max(max_spread, std::abs(d.delta_frobenius - d.counted_value));
        max_entry_excess = std::max(max_entry_excess, d.max_entry - 2.0 / n);
        if (k > 0 && k < p) {
          ratio_lo = std::min(ratio_lo, d.ratio_to_stated);
          ratio_hi = std::max(ratio_hi, d.ratio_to_stated);
        }
      }
      for (Index k = 0; k <= p; ++k) {
        sym_gap = std::max(sym_gap, std::abs(by_k[k] - by_k[p - k]));
      }
    }
    // Entries are sums of +-1 over n; a few ulps of rounding are allowed.
    const bool case_ok = max_spread <= 1e-14 && max_entry_excess <= 1e-15 &&
                         sym_gap <= 1e-14 && ratio_hi - ratio_lo <= 1e-12;
    ok = ok && case_ok;
    recorded_ratio = ratio_hi;
    detail += fmt("n=%ld p=%ld: |brute - 2sqrt(2k(p-k))/n| <= %.1e, ratio to "
                  "stated formula %.15f (spread %.1e), max_entry - 2/n <= %.1e, "
                  "k vs p-k gap %.1e; ",
                  static_cast<long>(n), static_cast<long>(p), max_spread,
                  ratio_hi, ratio_hi - ratio_lo, max_entry_excess, sym_gap);
  }
  ok = ok && std::abs(recorded_ratio - std::sqrt(2.0)) <= 1e-12;
  detail += "1000 bases each";
  return {ok, detail};
}

#ifdef COMPRIV_BIN
namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(COMPRIV_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string stable_report(const fs::path& file) {
  std::ifstream in(file);
  nlohmann::json j = nlohmann::json::parse(in);
  j["provenance"].erase("wall_time_seconds");
  return j.dump();
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 7. Byte-identical reports for repeated CLI runs.
Verdict cli_determinism() {
  const fs::path dir =
      fs::temp_directory_path() / ("compriv_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto at = [&](const std::string& name) { return (dir / name).string(); };

  const DataMatrix x(random_sign_matrix(100, 4, 0xacc7));
  const BinaryInstance inst = make_neighbor(x, 5, 1, 0xacc7);
  write_csv_file(at("a.csv"), inst.base.entries());
  write_csv_file(at("b.csv"), inst.neighbor.entries());
  write_csv_file(at("s.csv"), empirical_covariance(inst.base).entries());
  std::ofstream(at("fam.json")) << R"({"members": ["a.csv", "b.csv"]})";

  struct Case {
    std::string name;
    std::string first;
    std::string second;
    std::vector<std::string> reports;  // compared pairwise
    std::vector<std::string> files;    // compared byte for byte
  };
  const std::string sanitize = "sanitize --input " + at("a.csv") + " --reference " +
                               at("s.csv") + " --m 200 --seed 3 --delta-max 0.02";
  const std::string audit = "audit --family " + at("fam.json") +
                            " --m 200 --trials 200 --seed 4 --out ";
  const std::string pca = "pca --input " + at("a.csv") + " --compressed " +
                          at("xc1.csv") + " --d 1 --m 200 --delta-max 0.02 --out ";
  const std::vector<Case> cases{
      {"sanitize",
       sanitize + " --output " + at("xc1.csv") + " --report " + at("s1.json"),
       sanitize + " --output " + at("xc2.csv") + " --report " + at("s2.json"),
       {at("s1.json"), at("s2.json")},
       {at("xc1.csv"), at("xc2.csv")}},
      {"bound",
       "bound --family " + at("fam.json") + " --m 200 --out " + at("b1.json"),
       "bound --family " + at("fam.json") + " --m 200 --out " + at("b2.json"),
       {at("b1.json"), at("b2.json")},
       {}},
      {"audit",
       "--threads 1 " + audit + at("a1.json"),
       "--threads 8 " + audit + at("a8.json"),
       {at("a1.json"), at("a8.json")},
       {}},
      {"pca", pca + at("p1.json"), pca + at("p2.json"),
       {at("p1.json"), at("p2.json")}, {}},
      {"binary-demo",
       "binary-demo --n 100 --p 4 --k 1 --m 200 --seed 7 --out " + at("d1.json"),
       "binary-demo --n 100 --p 4 --k 1 --m 200 --seed 7 --out " + at("d2.json"),
       {at("d1.json"), at("d2.json")},
       {}},
  };
  bool ok = true;
  std::string detail;
  for (const Case& cs : cases) {
    const int rc1 = run_cli(cs.first);
    const int rc2 = run_cli(cs.second);
    bool same = rc1 == 0 && rc2 == 0 &&
                stable_report(cs.reports[0]) == stable_report(cs.reports[1]);
    if (!cs.files.empty()) same = same && slurp(cs.files[0]) == slurp(cs.files[1]);
    ok = ok && same;
    detail += cs.name + (same ? " identical" : fmt(" differs (exit %d/%d)", rc1, rc2)) + "; ";
  }
  detail += "audit compared at --threads 1 vs 8";
  fs::remove_all(dir);
  return {ok, detail};
}
#else
Verdict cli_determinism() { return {false, "compriv binary was not built"}; }
#endif

}  // namespace
}  // namespace compriv

int main() {
  using compriv::Verdict;
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "truncation probability", compriv::truncation_probability},
      {2, "inner-product concentration", compriv::concentration},
      {3, "Kronecker integral sandwich", compriv::kron_sandwich},
      {4, "privacy audit on binary neighbors", compriv::privacy_audit},
      {5, "eigenprojector certificate", compriv::pca_certificate},
      {6, "binary example", compriv::binary_example},
      {7, "CLI determinism", compriv::cli_determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL", c.id,
                c.name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
