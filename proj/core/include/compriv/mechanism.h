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

#ifndef COMPRIV_MECHANISM_H_
#define COMPRIV_MECHANISM_H_

#include <cstdint>
#include <string>

#include "compriv/matrix_core.h"
#include "compriv/rng.h"

namespace compriv {

// Constants of the inner-product concentration inequality
// P(|n/m <Phi x, Phi y> - <x, y>| >= t) <= 2 exp(-m t^2 / (C1 + C2 t)).
double concentration_c1();  // 4e / sqrt(6 pi)
double concentration_c2();  // sqrt(8) e ~ 7.6885
// sqrt(2 (C1 + C2)), the default acceptance-radius constant.
double default_radius_constant();
// 2 (C1 + C2) ln(2np): the smallest m for which the truncated mass is
// guaranteed to be at most 1/n^2.
double min_m_for_truncation_bound(Index n, Index p);

struct ProjectionConfig {
  Index m = 1;
  std::uint64_t seed = 0;
  int max_retries = 1000;
  double c = default_radius_constant();

  // Throws InvalidArgument.
  void validate() const;
};

struct CompressedMatrix {
  Matrix entries;  // m x p
  std::string source_fingerprint;
  std::uint64_t seed_used = 0;
  int retries = 0;
  double threshold = 0.0;
  double achieved_deviation = 0.0;
};

struct Acceptance {
  bool accepted = false;
  double deviation = 0.0;
};

// FNV-1a over the shape and entry bytes, as 16 hex digits.
std::string fingerprint(const Matrix& m);

// m x n matrix with i.i.d. N(0, 1/n) entries drawn row-major from the given
// stream.
Matrix sample_ensemble(Index n, Index m, std::uint64_t stream_id);

// c sqrt(ln(2np) / m) + delta_max.
double acceptance_radius(Index n, Index p, Index m, double delta_max, double c);

// Max-entry distance between Xc^T Xc / m and the reference; accepted iff it
// is at most the radius. Throws ShapeMismatch.
Acceptance accepts(const Matrix& compressed, const CovarianceMatrix& sigma_ref,
                   double radius);

// Compresses with a fresh ensemble per attempt until the output is accepted.
// Only the accepted draw leaves this function. Throws NotNormalized,
// DimensionOrder (p >= n), NotPositiveDefinite, ShapeMismatch and
// RetriesExhausted.
CompressedMatrix sanitize(const DataMatrix& x,
                          const CovarianceMatrix& sigma_ref,
                          const ProjectionConfig& cfg, double delta_max);

// Stream id used by attempt `attempt` of a sanitize call with `seed`.
std::uint64_t attempt_stream(std::uint64_t seed, int attempt);

// Reusable buffers for repeated compression of one input.
class Compressor {
 public:
  explicit Compressor(const DataMatrix& x, Index m);

  // Phi X for the ensemble drawn from stream_id; same draw as
  // sample_ensemble(n, m, stream_id) * X.
  const Matrix& compress(std::uint64_t stream_id);

 private:
  const Matrix& x_;
  Index m_;
  Matrix phi_;
  Matrix out_;
};

}  // namespace compriv

#endif  // COMPRIV_MECHANISM_H_
