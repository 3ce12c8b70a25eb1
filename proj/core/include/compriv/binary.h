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

#ifndef COMPRIV_BINARY_H_
#define COMPRIV_BINARY_H_

#include <cstdint>
#include <vector>

#include "compriv/matrix_core.h"
#include "compriv/privacy.h"

namespace compriv {

// A +-1 database and a neighbor with k sign flips in a single row.
struct BinaryInstance {
  DataMatrix base;
  DataMatrix neighbor;
  Index flipped_row = 0;
  Index k = 0;
  double tau_flip = 0.0;  // k / p
  std::vector<Index> flipped_columns;  // ascending
};

struct BinaryDelta {
  // ||Sigma_base - Sigma_neighbor||_F computed from the matrices.
  double delta_frobenius = 0.0;
  // 2 sqrt(2 k (p - k)) / n, from counting the nonzero entries of
  // x x^T - y y^T: 2k(p-k) entries of magnitude 2.
  double counted_value = 0.0;
  // 2 p sqrt(tau (1 - tau)) / n as stated for the binary game.
  double stated_formula_value = 0.0;
  // delta_frobenius / stated_formula_value; 0 when both vanish.
  double ratio_to_stated = 0.0;
  double max_entry = 0.0;
};

struct BinaryAlphaReport {
  // General bound on the instance's own covariance pair.
  PrivacyReport general;
  // Closed form for the binary game, ||Delta||_F <= p/n and
  // delta_max <= 2/n plugged in:
  //   m p^2 / (n l2 l1) (c sqrt(ln 2np / m) + 2/n + 2 ||S1||^2 / (n l2 l1))
  // plus the renormalization correction.
  double binary_bound = 0.0;
  double binary_radius_part = 0.0;  // m p^2 c sqrt(ln 2np / m) / (n l2 l1)
  // The bounded general form evaluated at ||Delta||_F = p/n,
  // delta_max = 2/n, without renormalization. The binary closed form drops
  // its factor 1/2, so binary_bound - renorm == 2 * general_at_binary_inputs.
  double general_at_binary_inputs = 0.0;
  double cross_check_residual = 0.0;  // relative
};

// Uniformly random +-1 matrix.
Matrix random_sign_matrix(Index n, Index p, std::uint64_t stream_id);

// Flips k uniformly chosen entries of `row`. Throws NotBinary,
// IndexOutOfRange.
BinaryInstance make_neighbor(const DataMatrix& x, Index row, Index k,
                             std::uint64_t stream_id);

BinaryDelta binary_delta_exact(const BinaryInstance& inst);

// Throws NotPositiveDefinite, PreconditionFailed.
BinaryAlphaReport binary_alpha_report(const BinaryInstance& inst, Index m,
                                      double c);

}  // namespace compriv

#endif  // COMPRIV_BINARY_H_
