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

#include "compriv/matrix_core.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "compriv/error.h"

namespace compriv {
namespace {

bool columns_normalized(const Matrix& m, double tol) {
  const double n = static_cast<double>(m.rows());
  for (Index j = 0; j < m.cols(); ++j) {
    if (std::abs(m.col(j).squaredNorm() - n) > tol * n) return false;
  }
  return true;
}

}  // namespace

DataMatrix::DataMatrix(Matrix entries, const Tolerances& tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.cols() < 1) {
    throw Error(ErrorKind::kShapeMismatch,
                "data matrix must have n >= 1 and p >= 1");
  }
  if (!entries_.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument,
                "data matrix contains non-finite entries");
  }
  normalized_ = columns_normalized(entries_, tol.normalization);
}

CovarianceMatrix::CovarianceMatrix(const Matrix& entries, Index source_n)
    : source_n_(source_n) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw Error(ErrorKind::kShapeMismatch, "covariance must be square");
  }
  if (!entries.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument,
                "covariance contains non-finite entries");
  }
  entries_ = (entries + entries.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_,
                                               Eigen::EigenvaluesOnly);
  eigenvalues_ = solver.eigenvalues().reverse();
  eigmax_ = eigenvalues_(0);
  eigmin_ = eigenvalues_(eigenvalues_.size() - 1);
  if (eigmin_ > 0.0) {
    Eigen::LLT<Matrix> llt(entries_);
    if (llt.info() == Eigen::Success) {
      logdet_ = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
      llt_ = std::move(llt);
    }
  }
}

const Eigen::LLT<Matrix>& CovarianceMatrix::cholesky() const {
  if (!llt_) {
    throw Error(ErrorKind::kNotPositiveDefinite,
                "Cholesky factorization failed (lambda_min = " +
                    std::to_string(eigmin_) +
                    "); covariance is singular or indefinite, e.g. p >= n");
  }
  return *llt_;
}

Matrix CovarianceMatrix::solve(const Matrix& rhs) const {
  return cholesky().solve(rhs);
}

Matrix CovarianceMatrix::inverse() const {
  Matrix inv = solve(Matrix::Identity(p(), p()));
  return (inv + inv.transpose()) / 2.0;
}

DataMatrix normalize_columns(const Matrix& raw, const Tolerances& tol) {
  Matrix out = raw;
  const double root_n = std::sqrt(static_cast<double>(raw.rows()));
  for (Index j = 0; j < raw.cols(); ++j) {
    const double norm = raw.col(j).norm();
    if (norm == 0.0) {
      throw Error(ErrorKind::kZeroColumn,
                  "column " + std::to_string(j) +
                      " has zero norm and cannot be normalized");
    }
    // Already-normalized columns are left bit-identical.
    if (std::abs(norm * norm - raw.rows()) <= 1e-15 * raw.rows()) continue;
    out.col(j) *= root_n / norm;
  }
  return DataMatrix(std::move(out), tol);
}

CovarianceMatrix empirical_covariance(const DataMatrix& x, Index divisor) {
  if (divisor <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "divisor must be positive");
  }
  const Matrix& e = x.entries();
  Matrix gram = Matrix::Zero(e.cols(), e.cols());
  gram.selfadjointView<Eigen::Lower>().rankUpdate(e.transpose());
  gram = gram.selfadjointView<Eigen::Lower>();
  return CovarianceMatrix(gram / static_cast<double>(divisor), divisor);
}

double max_entry(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

MatrixNorms matrix_norms(const Matrix& m) {
  MatrixNorms out;
  if (m.size() == 0) return out;
  out.frobenius = m.norm();
  out.max_entry = max_entry(m);
  Eigen::JacobiSVD<Matrix> svd(m);
  out.spectral = svd.singularValues()(0);
  return out;
}

SymEig sym_eig(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::kShapeMismatch, "sym_eig needs a square matrix");
  }
  const double scale = std::max(1.0, max_entry(m));
  const double asym = max_entry(m - m.transpose());
  if (asym > tol.symmetry * scale) {
    throw Error(ErrorKind::kNotSymmetric,
                "max |M - M^T| = " + std::to_string(asym));
  }
  const Matrix sym = (m + m.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kNotSymmetric, "eigensolver did not converge");
  }
  SymEig out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  for (Index k = 0; k < out.vectors.cols(); ++k) {
    auto v = out.vectors.col(k);
    for (Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
  }
  return out;
}

double log_det_pd(const CovarianceMatrix& m) {
  const auto& llt = m.cholesky();
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace compriv
