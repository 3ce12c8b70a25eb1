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

#ifndef COMPRIV_FAMILY_H_
#define COMPRIV_FAMILY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "compriv/matrix_core.h"

namespace compriv {

// A set of normalized databases sharing (n, p), with a designated reference
// member whose covariance plays Sigma_1.
class DatabaseFamily {
 public:
  // Validates shapes and normalization, then computes delta_max (pairwise
  // mode, or population mode when population_sigma is given).
  DatabaseFamily(std::vector<DataMatrix> members,
                 std::size_t reference_index = 0,
                 std::optional<Matrix> population_sigma = std::nullopt,
                 int threads = 1);

  const std::vector<DataMatrix>& members() const { return members_; }
  std::size_t reference_index() const { return reference_index_; }
  const DataMatrix& reference() const { return members_[reference_index_]; }
  double delta_max() const { return delta_max_; }
  const std::optional<Matrix>& population_sigma() const {
    return population_sigma_;
  }
  Index n() const { return members_.front().n(); }
  Index p() const { return members_.front().p(); }

 private:
  std::vector<DataMatrix> members_;
  std::size_t reference_index_;
  std::optional<Matrix> population_sigma_;
  double delta_max_ = 0.0;
};

struct PerturbationPair {
  Matrix delta;  // Sigma_1 - Sigma_j
  Matrix gamma;  // Sigma_j^{-1} - Sigma_1^{-1}
  MatrixNorms delta_norms;
  double gamma_frobenius = 0.0;
  double gamma_spectral = 0.0;
  // ||Gamma - Sigma_j^{-1} Delta Sigma_1^{-1}||_F.
  double identity_residual = 0.0;
  // Right-hand sides of ||Delta||_F <= p max|Delta| and
  // ||Gamma||_F <= ||Delta||_F / (lambda_min(Sigma_1) lambda_min(Sigma_j)).
  double delta_frobenius_bound = 0.0;
  double gamma_frobenius_bound = 0.0;
  bool delta_bound_holds = false;
  bool gamma_bound_holds = false;
};

struct AssumptionReport {
  double inv_lambda_max = 0.0;  // 1 / lambda_max(Sigma_1)
  double c_min = 0.0;
  bool c_min_holds = false;
  double delta_spectral = 0.0;
  double gamma_spectral = 0.0;  // +inf when Sigma_j is not positive definite
  double lambda_min_ref = 0.0;
  double lambda_min_other = 0.0;
  // Eigenvalue stability: applies when ||Delta||_2 < lambda_min(S1).
  bool eigen_stability_applicable = false;
  double eigen_stability_lower = 0.0;  // lambda_min(S1) - ||Delta||_2
  // lambda_min(Sj) / eigen_stability_lower; >= 1 when the inequality holds.
  double eigen_stability_ratio = 0.0;
  bool eigen_stability_holds = false;
  bool all_hold = false;
};

// Rows differing in any entry by more than tol.row_equality.
// Throws ShapeMismatch.
Index row_difference(const DataMatrix& a, const DataMatrix& b,
                     const Tolerances& tol = {});

// max_{l,k} |Sigma_a(l,k) - Sigma_b(l,k)|. Throws ShapeMismatch.
double covariance_distance(const DataMatrix& a, const DataMatrix& b);

// Pairwise: max over unordered pairs of covariance_distance.
// Population: 2 * max over members of max|Sigma_j - Sigma*|.
// Throws TooFewMembers.
double compute_delta_max(std::span<const DataMatrix> members,
                         const std::optional<Matrix>& population_sigma,
                         int threads = 1);
double compute_delta_max(const DatabaseFamily& family, int threads = 1);

// Throws NotPositiveDefinite.
PerturbationPair perturbation_pair(const CovarianceMatrix& s1,
                                   const CovarianceMatrix& sj);

AssumptionReport check_assumptions(const CovarianceMatrix& s1,
                                   const CovarianceMatrix& sj, double c_min);

// Diagnostic Gaussian rate sqrt(log p / n) for population-mode delta_max.
double gaussian_delta_rate(Index n, Index p);

// Loads a family manifest:
//   {"members": ["x1.csv", ...], "reference_index": 0,
//    "population_sigma": "sigma.csv", "header": false}
// Relative paths resolve against the manifest's directory. Members are
// column-normalized on load.
DatabaseFamily load_family_manifest(const std::string& path, int threads = 1);

}  // namespace compriv

#endif  // COMPRIV_FAMILY_H_
