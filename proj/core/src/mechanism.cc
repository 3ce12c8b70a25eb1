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

#include "compriv/mechanism.h"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "compriv/error.h"

namespace compriv {
namespace {

void fill_ensemble(Matrix& phi, Index n, std::uint64_t stream_id) {
  NormalSource normal(stream_id);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index i = 0; i < phi.rows(); ++i) {
    for (Index j = 0; j < phi.cols(); ++j) phi(i, j) = scale * normal();
  }
}

}  // namespace

double concentration_c1() {
  return 4.0 * std::numbers::e / std::sqrt(6.0 * std::numbers::pi);
}

// Read as sqrt(8) * e, the value 7.6885 the constant is quoted with.
double concentration_c2() { return std::sqrt(8.0) * std::numbers::e; }

double default_radius_constant() {
  return std::sqrt(2.0 * (concentration_c1() + concentration_c2()));
}

double min_m_for_truncation_bound(Index n, Index p) {
  return 2.0 * (concentration_c1() + concentration_c2()) *
         std::log(2.0 * static_cast<double>(n) * static_cast<double>(p));
}

void ProjectionConfig::validate() const {
  if (m < 1) throw Error(ErrorKind::kInvalidArgument, "m must be >= 1");
  if (max_retries < 1) {
    throw Error(ErrorKind::kInvalidArgument, "max_retries must be >= 1");
  }
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw Error(ErrorKind::kInvalidArgument, "c must be finite and >= 0");
  }
}

std::string fingerprint(const Matrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t shape[2] = {m.rows(), m.cols()};
  feed(shape, sizeof(shape));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      feed(&v, sizeof(v));
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Matrix sample_ensemble(Index n, Index m, std::uint64_t stream_id) {
  if (n < 1 || m < 1) {
    throw Error(ErrorKind::kInvalidArgument, "ensemble needs n, m >= 1");
  }
  Matrix phi(m, n);
  fill_ensemble(phi, n, stream_id);
  return phi;
}

double acceptance_radius(Index n, Index p, Index m, double delta_max,
                         double c) {
  if (n < 1 || p < 1 || m < 1) {
    throw Error(ErrorKind::kInvalidArgument, "n, p, m must be positive");
  }
  if (!(delta_max >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "delta_max must be >= 0");
  }
  const double log_term =
      std::log(2.0 * static_cast<double>(n) * static_cast<double>(p));
  return c * std::sqrt(log_term / static_cast<double>(m)) + delta_max;
}

Acceptance accepts(const Matrix& compressed, const CovarianceMatrix& sigma_ref,
                   double radius) {
  if (compressed.cols() != sigma_ref.p() || compressed.rows() < 1) {
    throw Error(ErrorKind::kShapeMismatch,
                "compressed output has " + std::to_string(compressed.cols()) +
                    " columns, reference covariance is " +
                    std::to_string(sigma_ref.p()) + "x" +
                    std::to_string(sigma_ref.p()));
  }
  const double m = static_cast<double>(compressed.rows());
  const Index p = compressed.cols();
  double worst = 0.0;
  // Upper triangle suffices: both sides are symmetric.
  for (Index k = 0; k < p; ++k) {
    for (Index j = 0; j <= k; ++j) {
      const double entry = compressed.col(j).dot(compressed.col(k)) / m;
      worst = std::max(worst, std::abs(entry - sigma_ref.entries()(j, k)));
    }
  }
  return {worst <= radius, worst};
}

std::uint64_t attempt_stream(std::uint64_t seed, int attempt) {
  return derive_stream(seed, {0x5a4e /* attempt tag */,
                              static_cast<std::uint64_t>(attempt)});
}

Compressor::Compressor(const DataMatrix& x, Index m)
    : x_(x.entries()), m_(m), phi_(m, x.n()), out_(m, x.p()) {}

const Matrix& Compressor::compress(std::uint64_t stream_id) {
  fill_ensemble(phi_, x_.rows(), stream_id);
  out_.noalias() = phi_ * x_;
  return out_;
}

CompressedMatrix sanitize(const DataMatrix& x,
                          const CovarianceMatrix& sigma_ref,
                          const ProjectionConfig& cfg, double delta_max) {
  cfg.validate();
  if (!x.normalized()) {
    throw Error(ErrorKind::kNotNormalized,
                "input columns must have squared norm n before compression");
  }
  if (x.p() >= x.n()) {
    throw Error(ErrorKind::kDimensionOrder,
                "p = " + std::to_string(x.p()) + " >= n = " +
                    std::to_string(x.n()) +
                    "; differential privacy requires p < n");
  }
  if (sigma_ref.p() != x.p()) {
    throw Error(ErrorKind::kShapeMismatch,
                "reference covariance width does not match input");
  }
  sigma_ref.cholesky();  // throws NotPositiveDefinite
  const double radius =
      acceptance_radius(x.n(), x.p(), cfg.m, delta_max, cfg.c);
  Compressor compressor(x, cfg.m);
  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    const std::uint64_t stream = attempt_stream(cfg.seed, attempt);
    const Matrix& candidate = compressor.compress(stream);
    const Acceptance verdict = accepts(candidate, sigma_ref, radius);
    if (!verdict.accepted) continue;
    CompressedMatrix out;
    out.entries = candidate;
    out.source_fingerprint = fingerprint(x.entries());
    out.seed_used = stream;
    out.retries = attempt;
    out.threshold = radius;
    out.achieved_deviation = verdict.deviation;
    return out;
  }
  const double needed = min_m_for_truncation_bound(x.n(), x.p());
  std::string hint;
  if (static_cast<double>(cfg.m) < needed) {
    hint = "; m < 2(C1+C2)ln 2np = " + std::to_string(needed) +
           ": truncation-probability precondition unmet";
  }
  throw Error(ErrorKind::kRetriesExhausted,
              "no accepted draw after " + std::to_string(cfg.max_retries) +
                  " attempts at radius " + std::to_string(radius) + hint);
}

}  // namespace compriv
