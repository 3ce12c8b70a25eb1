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

#include "compriv/family.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "compriv/csv.h"
#include "compriv/error.h"
#include "compriv/parallel.h"

namespace compriv {
namespace {

void require_same_shape(const DataMatrix& a, const DataMatrix& b) {
  if (a.n() != b.n() || a.p() != b.p()) {
    throw Error(ErrorKind::kShapeMismatch,
                std::to_string(a.n()) + "x" + std::to_string(a.p()) + " vs " +
                    std::to_string(b.n()) + "x" + std::to_string(b.p()));
  }
}

}  // namespace

DatabaseFamily::DatabaseFamily(std::vector<DataMatrix> members,
                               std::size_t reference_index,
                               std::optional<Matrix> population_sigma,
                               int threads)
    : members_(std::move(members)),
      reference_index_(reference_index),
      population_sigma_(std::move(population_sigma)) {
  if (members_.empty()) {
    throw Error(ErrorKind::kTooFewMembers, "family has no members");
  }
  if (reference_index_ >= members_.size()) {
    throw Error(ErrorKind::kIndexOutOfRange,
                "reference index " + std::to_string(reference_index_) +
                    " out of range");
  }
  for (std::size_t i = 0; i < members_.size(); ++i) {
    require_same_shape(members_.front(), members_[i]);
    if (!members_[i].normalized()) {
      throw Error(ErrorKind::kNotNormalized,
                  "member " + std::to_string(i) +
                      " does not have squared column norms equal to n");
    }
  }
  delta_max_ = compute_delta_max(members_, population_sigma_, threads);
}

Index row_difference(const DataMatrix& a, const DataMatrix& b,
                     const Tolerances& tol) {
  require_same_shape(a, b);
  Index count = 0;
  for (Index i = 0; i < a.n(); ++i) {
    if ((a.entries().row(i) - b.entries().row(i)).cwiseAbs().maxCoeff() >
        tol.row_equality) {
      ++count;
    }
  }
  return count;
}

double covariance_distance(const DataMatrix& a, const DataMatrix& b) {
  require_same_shape(a, b);
  return max_entry(empirical_covariance(a).entries() -
                   empirical_covariance(b).entries());
}

double compute_delta_max(std::span<const DataMatrix> members,
                         const std::optional<Matrix>& population_sigma,
                         int threads) {
  if (population_sigma) {
    if (members.empty()) {
      throw Error(ErrorKind::kTooFewMembers,
                  "population mode needs at least one member");
    }
    const Matrix& star = *population_sigma;
    double worst = 0.0;
    for (const auto& x : members) {
      const Matrix sigma = empirical_covariance(x).entries();
      if (sigma.rows() != star.rows() || sigma.cols() != star.cols()) {
        throw Error(ErrorKind::kShapeMismatch,
                    "population covariance does not match member width");
      }
      worst = std::max(worst, max_entry(sigma - star));
    }
    return 2.0 * worst;
  }
  if (members.size() < 2) {
    throw Error(ErrorKind::kTooFewMembers,
                "pairwise delta_max needs at least two members");
  }
  std::vector<Matrix> sigmas;
  sigmas.reserve(members.size());
  for (const auto& x : members) {
    require_same_shape(members.front(), x);
    sigmas.push_back(empirical_covariance(x).entries());
  }
  const auto count = static_cast<std::int64_t>(sigmas.size());
  return parallel_reduce(
      count, threads, 0.0,
      [&](std::int64_t begin, std::int64_t end) {
        double local = 0.0;
        for (std::int64_t i = begin; i < end; ++i) {
          for (std::int64_t j = i + 1; j < count; ++j) {
            local = std::max(local, max_entry(sigmas[i] - sigmas[j]));
          }
        }
        return local;
      },
      [](double a, double b) { return std::max(a, b); });
}

double compute_delta_max(const DatabaseFamily& family, int threads) {
  return compute_delta_max(family.members(), family.population_sigma(),
                           threads);
}

PerturbationPair perturbation_pair(const CovarianceMatrix& s1,
                                   const CovarianceMatrix& sj) {
  if (s1.p() != sj.p()) {
    throw Error(ErrorKind::kShapeMismatch, "covariance widths differ");
  }
  const Matrix inv1 = s1.inverse();
  const Matrix invj = sj.inverse();
  PerturbationPair out;
  out.delta = s1.entries() - sj.entries();
  out.gamma = invj - inv1;
  out.delta_norms = matrix_norms(out.delta);
  out.gamma_frobenius = out.gamma.norm();
  out.gamma_spectral = matrix_norms(out.gamma).spectral;
  out.identity_residual = (out.gamma - invj * out.delta * inv1).norm();
  const double p = static_cast<double>(s1.p());
  out.delta_frobenius_bound = p * out.delta_norms.max_entry;
  out.gamma_frobenius_bound =
      out.delta_norms.frobenius / (s1.eigmin() * sj.eigmin());
  // Slack for rounding in the two sides.
  constexpr double kRel = 1e-12;
  out.delta_bound_holds = out.delta_norms.frobenius <=
                          out.delta_frobenius_bound * (1 + kRel) + 1e-300;
  out.gamma_bound_holds =
      out.gamma_frobenius <= out.gamma_frobenius_bound * (1 + 1e-9) + 1e-300;
  return out;
}

AssumptionReport check_assumptions(const CovarianceMatrix& s1,
                                   const CovarianceMatrix& sj, double c_min) {
  if (!s1.positive_definite()) {
    s1.cholesky();  // throws NotPositiveDefinite with context
  }
  AssumptionReport r;
  r.inv_lambda_max = 1.0 / s1.eigmax();
  r.c_min = c_min;
  r.c_min_holds = r.inv_lambda_max >= c_min;
  const Matrix delta = s1.entries() - sj.entries();
  r.delta_spectral = matrix_norms(delta).spectral;
  r.gamma_spectral = sj.positive_definite()
                         ? matrix_norms(sj.inverse() - s1.inverse()).spectral
                         : std::numeric_limits<double>::infinity();
  r.lambda_min_ref = s1.eigmin();
  r.lambda_min_other = sj.eigmin();
  r.eigen_stability_applicable = r.delta_spectral < r.lambda_min_ref;
  r.eigen_stability_lower = r.lambda_min_ref - r.delta_spectral;
  if (r.eigen_stability_applicable) {
    r.eigen_stability_ratio = r.lambda_min_other / r.eigen_stability_lower;
    // Eigenvalues carry O(eps * ||S||) error.
    const double slack = 1e-12 * std::max(1.0, s1.eigmax());
    r.eigen_stability_holds = r.lambda_min_other >= r.eigen_stability_lower - slack;
  } else {
    r.eigen_stability_holds = true;  // vacuous
  }
  r.all_hold = r.c_min_holds && r.eigen_stability_holds && sj.positive_definite();
  return r;
}

double gaussian_delta_rate(Index n, Index p) {
  return std::sqrt(std::log(static_cast<double>(p)) / static_cast<double>(n));
}

DatabaseFamily load_family_manifest(const std::string& path, int threads) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open manifest '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kIo, "manifest '" + path + "': " + e.what());
  }
  const std::filesystem::path base =
      std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return (fp.is_absolute() ? fp : base / fp).string();
  };
  if (!doc.is_object() || !doc.contains("members") ||
      !doc["members"].is_array()) {
    throw Error(ErrorKind::kInvalidArgument,
                "manifest needs a \"members\" array of CSV paths");
  }
  const bool header = doc.value("header", false);
  std::vector<DataMatrix> members;
  for (const auto& entry : doc["members"]) {
    if (!entry.is_string()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "manifest members must be path strings");
    }
    members.push_back(normalize_columns(
        read_csv_file(resolve(entry.get<std::string>()), header)));
  }
  std::optional<Matrix> population;
  if (doc.contains("population_sigma") && !doc["population_sigma"].is_null()) {
    population = read_csv_file(
        resolve(doc["population_sigma"].get<std::string>()), header);
  }
  const auto ref = doc.value("reference_index", std::size_t{0});
  return DatabaseFamily(std::move(members), ref, std::move(population),
                        threads);
}

}  // namespace compriv
