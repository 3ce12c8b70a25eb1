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

#ifndef COMPRIV_MATRIX_CORE_H_
#define COMPRIV_MATRIX_CORE_H_

#include <optional>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace compriv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Numerical contracts shared by the matrix primitives. The defaults are the
// documented tolerances; callers may tighten or relax them.
struct Tolerances {
  double normalization = 1e-10;  // relative, on squared column norms
  double symmetry = 1e-10;       // relative to max |M_ij|, for sym_eig input
  double eigengap = 1e-10;       // absolute, for eigenprojector selection
  double row_equality = 1e-12;   // absolute, for row_difference
};

// The private n x p input. Constructed values are finite with n, p >= 1;
// `normalized()` reports whether every column has squared norm n.
class DataMatrix {
 public:
  explicit DataMatrix(Matrix entries, const Tolerances& tol = {});

  const Matrix& entries() const { return entries_; }
  Index n() const { return entries_.rows(); }
  Index p() const { return entries_.cols(); }
  bool normalized() const { return normalized_; }

 private:
  Matrix entries_;
  bool normalized_ = false;
};

// Symmetric p x p covariance with cached spectrum and, when positive
// definite, a Cholesky factor and log-determinant.
class CovarianceMatrix {
 public:
  // Symmetrizes (M + M^T) / 2. source_n records the divisor used, 0 if the
  // matrix did not come from empirical_covariance.
  explicit CovarianceMatrix(const Matrix& entries, Index source_n = 0);

  const Matrix& entries() const { return entries_; }
  Index p() const { return entries_.rows(); }
  Index source_n() const { return source_n_; }
  double eigmin() const { return eigmin_; }
  double eigmax() const { return eigmax_; }
  // Descending.
  const Vector& eigenvalues() const { return eigenvalues_; }
  const std::optional<double>& logdet() const { return logdet_; }
  bool positive_definite() const { return llt_.has_value(); }

  // Solves Sigma * X = rhs through the Cholesky factor.
  // Throws NotPositiveDefinite.
  Matrix solve(const Matrix& rhs) const;
  Matrix inverse() const;
  const Eigen::LLT<Matrix>& cholesky() const;

 private:
  Matrix entries_;
  Index source_n_;
  Vector eigenvalues_;
  double eigmin_ = 0.0;
  double eigmax_ = 0.0;
  std::optional<double> logdet_;
  std::optional<Eigen::LLT<Matrix>> llt_;
};

struct MatrixNorms {
  double frobenius = 0.0;
  double spectral = 0.0;
  double max_entry = 0.0;
};

struct SymEig {
  Vector values;   // descending
  Matrix vectors;  // columns; first nonzero component of each is positive
};

// Rescales each column to squared norm n, preserving direction.
// Throws ZeroColumn.
DataMatrix normalize_columns(const Matrix& raw, const Tolerances& tol = {});

// X^T X / divisor.
CovarianceMatrix empirical_covariance(const DataMatrix& x, Index divisor);
inline CovarianceMatrix empirical_covariance(const DataMatrix& x) {
  return empirical_covariance(x, x.n());
}

MatrixNorms matrix_norms(const Matrix& m);
double max_entry(const Matrix& m);

// Throws NotSymmetric when max|M - M^T| exceeds tol.symmetry * max(1, max|M|).
SymEig sym_eig(const Matrix& m, const Tolerances& tol = {});

// ln |M| from the Cholesky factor. Throws NotPositiveDefinite.
double log_det_pd(const CovarianceMatrix& m);

}  // namespace compriv

#endif  // COMPRIV_MATRIX_CORE_H_
