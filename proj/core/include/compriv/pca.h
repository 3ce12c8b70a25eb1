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

#ifndef COMPRIV_PCA_H_
#define COMPRIV_PCA_H_

#include <optional>

#include "compriv/matrix_core.h"
#include "compriv/mechanism.h"

namespace compriv {

struct PcaReport {
  Index d = 0;
  double delta_d = 0.0;  // (lambda_d - lambda_{d+1}) / 2 of A
  double b_frobenius = 0.0;
  double b_max_entry = 0.0;
  double zb_bound = 0.0;  // ||B||_F / delta_d
  // ||P^d(A) - P^d(A + B)||_F; empty when A + B has no gap at d.
  std::optional<double> projector_distance;
  double lambda_min_sum = 0.0;  // lambda_min(A + B)
  // ||B||_F <= delta_d / 2 and A + B positive semidefinite.
  bool applicable = false;
  bool zb_holds = false;  // projector_distance <= zb_bound

  // Filled by compressed_pca_report.
  std::optional<double> tau_bound;  // c sqrt(ln 2np / m) + 2 delta_max
  bool max_entry_within_tau = false;
  bool frobenius_within_p_tau = false;
  bool frobenius_within_p_max_entry = false;
};

// V_d V_d^T for the top-d eigenvectors. Throws DegenerateGap when
// lambda_d - lambda_{d+1} <= tol.eigengap, InvalidArgument for d outside
// [1, p].
Matrix eigenprojector(const Matrix& m, Index d, const Tolerances& tol = {});

// Both sides of ||P^d(A) - P^d(A+B)||_F <= ||B||_F / delta_d.
// Throws DegenerateGap (for A), ShapeMismatch, NotSymmetric.
PcaReport zb_certificate(const Matrix& a, const Matrix& b, Index d,
                         const Tolerances& tol = {});

// A = X^T X / n, B = Xc^T Xc / m - A, with the threshold chain
// max|B| <= c sqrt(ln 2np / m) + 2 delta_max and ||B||_F <= p max|B|.
// Throws DegenerateGap, ShapeMismatch.
PcaReport compressed_pca_report(const DataMatrix& x, const Matrix& compressed,
                                Index d, Index n, Index p, Index m,
                                double delta_max, double c,
                                const Tolerances& tol = {});

}  // namespace compriv

#endif  // COMPRIV_PCA_H_
