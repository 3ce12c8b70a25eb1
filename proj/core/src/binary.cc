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

#include "compriv/binary.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/random/uniform_int_distribution.hpp>

#include "compriv/error.h"
#include "compriv/family.h"
#include "compriv/mechanism.h"
#include "compriv/rng.h"

namespace compriv {
namespace {

void require_binary(const DataMatrix& x) {
  const Matrix& e = x.entries();
  for (Index i = 0; i < e.rows(); ++i) {
    for (Index j = 0; j < e.cols(); ++j) {
      if (e(i, j) != 1.0 && e(i, j) != -1.0) {
        throw Error(ErrorKind::kNotBinary,
                    "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") is not +-1");
      }
    }
  }
}

}  // namespace

Matrix random_sign_matrix(Index n, Index p, std::uint64_t stream_id) {
  if (n < 1 || p < 1) {
    throw Error(ErrorKind::kInvalidArgument, "need n, p >= 1");
  }
  CounterStream bits(stream_id);
  Matrix out(n, p);
  std::uint64_t word = 0;
  int left = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) {
      if (left == 0) {
        word = bits();
        left = 64;
      }
      out(i, j) = (word & 1ULL) ? 1.0 : -1.0;
      word >>= 1;
      --left;
    }
  }
  return out;
}

BinaryInstance make_neighbor(const DataMatrix& x, Index row, Index k,
                             std::uint64_t stream_id) {
  require_binary(x);
  if (row < 0 || row >= x.n()) {
    throw Error(ErrorKind::kIndexOutOfRange,
                "row " + std::to_string(row) + " outside [0, " +
                    std::to_string(x.n()) + ")");
  }
  if (k < 0 || k > x.p()) {
    throw Error(ErrorKind::kIndexOutOfRange,
                "flip count " + std::to_string(k) + " outside [0, " +
                    std::to_string(x.p()) + "]");
  }
  std::vector<Index> columns(static_cast<std::size_t>(x.p()));
  std::iota(columns.begin(), columns.end(), Index{0});
  CounterStream bits(stream_id);
  // Partial Fisher-Yates: the first k slots are a uniform k-subset.
  for (Index i = 0; i < k; ++i) {
    boost::random::uniform_int_distribution<Index> pick(i, x.p() - 1);
    std::swap(columns[static_cast<std::size_t>(i)],
              columns[static_cast<std::size_t>(pick(bits))]);
  }
  columns.resize(static_cast<std::size_t>(k));
  std::sort(columns.begin(), columns.end());

  Matrix flipped = x.entries();
  for (Index col : columns) flipped(row, col) = -flipped(row, col);
  return BinaryInstance{x,
                        DataMatrix(std::move(flipped)),
                        row,
                        k,
                        static_cast<double>(k) / static_cast<double>(x.p()),
                        std::move(columns)};
}

BinaryDelta binary_delta_exact(const BinaryInstance& inst) {
  const double n = static_cast<double>(inst.base.n());
  const double p = static_cast<double>(inst.base.p());
  const double k = static_cast<double>(inst.k);
  const double tau = inst.tau_flip;
  BinaryDelta out;
  const Matrix delta = empirical_covariance(inst.base).entries() -
                       empirical_covariance(inst.neighbor).entries();
  out.delta_frobenius = delta.norm();
  out.max_entry = max_entry(delta);
  out.counted_value = 2.0 * std::sqrt(2.0 * k * (p - k)) / n;
  out.stated_formula_value = 2.0 * p * std::sqrt(tau * (1.0 - tau)) / n;
  out.ratio_to_stated = out.stated_formula_value > 0.0
                           ? out.delta_frobenius / out.stated_formula_value
                           : 0.0;
  return out;
}

BinaryAlphaReport binary_alpha_report(const BinaryInstance& inst, Index m,
                                      double c) {
  const Index n = inst.base.n();
  const Index p = inst.base.p();
  const CovarianceMatrix s1 = empirical_covariance(inst.base);
  const CovarianceMatrix s2 = empirical_covariance(inst.neighbor);
  const double trunc = analytic_truncation_bound(n, p, m, c);
  const double observed_delta_max = covariance_distance(inst.base, inst.neighbor);

  BinaryAlphaReport r;
  r.general = alpha_bound(s1, s2, n, p, m, observed_delta_max, c, trunc);

  const double nd = static_cast<double>(n);
  const double pd = static_cast<double>(p);
  const double md = static_cast<double>(m);
  const double lambdas = s1.eigmin() * s2.eigmin();
  const double s1_norm = s1.eigmax();
  const double prefactor = md * pd * pd / (nd * lambdas);
  const double root = c * std::sqrt(std::log(2.0 * nd * pd) / md);
  r.binary_radius_part = prefactor * root;
  const double binary_main =
      prefactor * (root + 2.0 / nd + 2.0 * s1_norm * s1_norm / (nd * lambdas));
  r.binary_bound = binary_main + r.general.renorm_correction;

  r.general_at_binary_inputs =
      alpha_closed_form(n, p, m, c, 2.0 / nd, pd / nd, s1.eigmin(),
                        s2.eigmin(), s1_norm);
  r.cross_check_residual =
      std::abs(binary_main - 2.0 * r.general_at_binary_inputs) / binary_main;
  return r;
}

}  // namespace compriv
