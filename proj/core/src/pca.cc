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

#include "compriv/pca.h"

#include <cmath>
#include <string>

#include "compriv/error.h"

namespace compriv {
namespace {

double gap_at(const Vector& values, Index d) {
  // Beyond the last eigenvalue the spectrum is zero.
  const double next = d < values.size() ? values(d) : 0.0;
  return values(d - 1) - next;
}

Matrix projector_from(const SymEig& eig, Index d) {
  const auto top = eig.vectors.leftCols(d);
  return top * top.transpose();
}

void check_gap(const SymEig& eig, Index d, const Tolerances& tol) {
  if (d < eig.values.size() && gap_at(eig.values, d) <= tol.eigengap) {
    throw Error(ErrorKind::kDegenerateGap,
                "lambda_" + std::to_string(d) + " - lambda_" +
                    std::to_string(d + 1) + " = " +
                    std::to_string(gap_at(eig.values, d)) +
                    "; the top-d eigenspace is not well defined");
  }
}

}  // namespace

Matrix eigenprojector(const Matrix& m, Index d, const Tolerances& tol) {
  if (d < 1 || d > m.rows()) {
    throw Error(ErrorKind::kInvalidArgument,
                "d = " + std::to_string(d) + " outside [1, p]");
  }
  const SymEig eig = sym_eig(m, tol);
  check_gap(eig, d, tol);
  return projector_from(eig, d);
}

PcaReport zb_certificate(const Matrix& a, const Matrix& b, Index d,
                         const Tolerances& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::kShapeMismatch, "A and B differ in shape");
  }
  if (d < 1 || d > a.rows()) {
    throw Error(ErrorKind::kInvalidArgument,
                "d = " + std::to_string(d) + " outside [1, p]");
  }
  const SymEig eig_a = sym_eig(a, tol);
  check_gap(eig_a, d, tol);
  const Matrix sum = a + b;
  const SymEig eig_sum = sym_eig(sum, tol);

  PcaReport r;
  r.d = d;
  r.delta_d = gap_at(eig_a.values, d) / 2.0;
  const MatrixNorms norms = matrix_norms(b);
  r.b_frobenius = norms.frobenius;
  r.b_max_entry = norms.max_entry;
  r.zb_bound = r.b_frobenius / r.delta_d;
  r.lambda_min_sum = eig_sum.values(eig_sum.values.size() - 1);
  if (d == sum.rows() || gap_at(eig_sum.values, d) > tol.eigengap) {
    r.projector_distance =
        (projector_from(eig_a, d) - projector_from(eig_sum, d)).norm();
  }
  r.applicable = r.b_frobenius <= r.delta_d / 2.0 && r.lambda_min_sum >= 0.0 &&
                 eig_a.values(d - 1) > 0.0;
  // Projectors are accurate to O(eps / gap).
  r.zb_holds = r.projector_distance.has_value() &&
               *r.projector_distance <= r.zb_bound + 1e-12;
  return r;
}

PcaReport compressed_pca_report(const DataMatrix& x, const Matrix& compressed,
                                Index d, Index n, Index p, Index m,
                                double delta_max, double c,
                                const Tolerances& tol) {
  if (x.n() != n || x.p() != p || compressed.rows() != m ||
      compressed.cols() != p) {
    throw Error(ErrorKind::kShapeMismatch,
                "expected X " + std::to_string(n) + "x" + std::to_string(p) +
                    " and compressed " + std::to_string(m) + "x" +
                    std::to_string(p) + ", got " + std::to_string(x.n()) +
                    "x" + std::to_string(x.p()) + " and " +
                    std::to_string(compressed.rows()) + "x" +
                    std::to_string(compressed.cols()));
  }
  const Matrix a = empirical_covariance(x).entries();
  Matrix sum = compressed.transpose() * compressed / static_cast<double>(m);
  sum = (sum + sum.transpose()) / 2.0;
  const Matrix b = sum - a;
  PcaReport r = zb_certificate(a, b, d, tol);
  const double tau =
      c * std::sqrt(std::log(2.0 * static_cast<double>(n) * static_cast<double>(p)) /
                    static_cast<double>(m)) +
      2.0 * delta_max;
  r.tau_bound = tau;
  r.max_entry_within_tau = r.b_max_entry <= tau;
  const double pd = static_cast<double>(p);
  r.frobenius_within_p_tau = r.b_frobenius <= pd * tau;
  r.frobenius_within_p_max_entry =
      r.b_frobenius <= pd * r.b_max_entry * (1 + 1e-12);
  return r;
}

}  // namespace compriv
