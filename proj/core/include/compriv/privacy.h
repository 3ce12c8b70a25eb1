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

#ifndef COMPRIV_PRIVACY_H_
#define COMPRIV_PRIVACY_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "compriv/family.h"
#include "compriv/matrix_core.h"
#include "compriv/mechanism.h"

namespace compriv {

// Dimensionless regime ratios. None of them is a verdict: the conditions
// they track are asymptotic.
struct RegimeDiagnostics {
  double suff_ratio = 0.0;     // delta_max p^2 sqrt(m ln 2np); small is good
  double pca_m_ratio = 0.0;    // m / (p^2 ln 2np); large is good
  double pca_p_ratio = 0.0;    // p^2 log(n) sqrt(m / n); small is good
  double p_cube_ratio = 0.0;   // p sqrt(ln 2np) / n^(1/6); small is good
};

RegimeDiagnostics regime_diagnostics(Index n, Index p, Index m,
                                     double delta_max);

struct KronBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// A = ln|Sj| - ln|S1| + tr(Gamma S1), Gamma = Sj^{-1} - S1^{-1}.
// Nonnegative; second order in Gamma. Throws NotPositiveDefinite.
double kron_A_exact(const CovarianceMatrix& s1, const CovarianceMatrix& sj);

// Gauss-Legendre evaluation of
//   vec(Gamma)^T [int_0^1 (1-v) K(v)^{-1} (x) K(v)^{-1} dv] vec(Gamma),
// K(v) = S1^{-1} + v Gamma, with the p^2 x p^2 Kronecker product formed
// explicitly. Throws IndefiniteAlongPath, TooLargeP (p > 40),
// NotPositiveDefinite.
double kron_A_quadrature(const CovarianceMatrix& s1,
                         const CovarianceMatrix& sj, int nodes);

// Lower: ||G||_F^2 l^2 / (2 (1 + l ||G||_2)^2), l = lambda_min(S1).
// Upper: ||G||_F^2 ||S1||_2^2 / (2 (1 - ||S1||_2 ||G||_2)^2).
// Throws PreconditionFailed when ||S1||_2 ||G||_2 >= 1.
KronBounds kron_A_bounds(const CovarianceMatrix& s1,
                         const CovarianceMatrix& sj);

// Gauss-Legendre nodes and weights on [0, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_unit(
    int nodes);

struct PrivacyInputs {
  Index n = 0;
  Index p = 0;
  Index m = 0;
  double delta_max = 0.0;  // also the distance constraint delta
  double c = 0.0;
  double radius = 0.0;
  double truncation_prob_bound = 0.0;
  double delta_frobenius = 0.0;
  double delta_max_entry = 0.0;
  double gamma_frobenius = 0.0;
  // ||Delta||_F / (lambda_min(S1) lambda_min(Si)).
  double gamma_frobenius_bound = 0.0;
  double gamma_spectral = 0.0;
  double lambda_min_ref = 0.0;
  double lambda_min_other = 0.0;
  double sigma_ref_spectral = 0.0;
};

struct PrivacyReport {
  double alpha_bound = 0.0;  // term_main + term_A + renorm_correction
  // m p ||Delta||_F / (2 l_i l_1) * (c sqrt(ln 2np / m) + delta_max).
  double term_main = 0.0;
  // m ||Gamma||_F^2 ||S1||_2^2 / (2 (1 - ||S1||_2 ||Gamma||_2)^2).
  double term_A = 0.0;
  // -2 ln(1 - truncation_prob_bound).
  double renorm_correction = 0.0;
  // The closed form with ||Gamma||_F replaced by its ||Delta||_F bound:
  // term_main + m ||Delta||_F^2 ||S1||_2^2 / (l_i l_1)^2 + renorm.
  double term_A_bounded = 0.0;
  double alpha_bound_bounded = 0.0;
  double kron_a_exact = 0.0;
  KronBounds kron_bounds;
  PrivacyInputs inputs;
  AssumptionReport assumption;
  RegimeDiagnostics regime;
};

// The closed form bound without renormalization, with ||Gamma||_F replaced
// by ||Delta||_F / (l_i l_1):
//   m p ||Delta||_F / (2 l_i l_1)
//     * (c sqrt(ln 2np / m) + delta_max + 2 ||Delta||_F ||S1||^2 / (p l_i l_1)).
double alpha_closed_form(Index n, Index p, Index m, double c, double delta_max,
                         double delta_frobenius, double lambda_min_ref,
                         double lambda_min_other, double sigma_ref_spectral);

// Throws NotPositiveDefinite, PreconditionFailed, InvalidArgument.
PrivacyReport alpha_bound(const CovarianceMatrix& s1,
                          const CovarianceMatrix& si, Index n, Index p,
                          Index m, double delta_max, double c,
                          double truncation_prob_bound, double c_min = 0.0);

// ln f'_{S1}(Xc) - ln f'_{S2}(Xc) for rows of Xc i.i.d. N(0, S), including
// the renormalization ln((1 - trunc_p2) / (1 - trunc_p1)).
// Throws NotPositiveDefinite, ShapeMismatch, InvalidArgument.
double log_density_ratio(const Matrix& compressed, const CovarianceMatrix& s1,
                         const CovarianceMatrix& s2, double trunc_p1 = 0.0,
                         double trunc_p2 = 0.0);
inline double log_density_ratio(const CompressedMatrix& compressed,
                                const CovarianceMatrix& s1,
                                const CovarianceMatrix& s2,
                                double trunc_p1 = 0.0, double trunc_p2 = 0.0) {
  return log_density_ratio(compressed.entries, s1, s2, trunc_p1, trunc_p2);
}

// 1/n^2 when m >= 2(C1+C2) ln 2np; otherwise the union bound
// min(1, p(p+1) exp(-m t^2 / (C1 + C2 t))) at t = c sqrt(ln 2np / m).
double analytic_truncation_bound(Index n, Index p, Index m, double c);

// Upper end of the two-sided Wilson score interval.
double wilson_upper(std::int64_t successes, std::int64_t trials,
                    double z = 1.959963984540054);

// bound + 3 sqrt(bound (1 - bound) / trials), bound clamped to [0, 1].
double three_sigma_limit(double bound, std::int64_t trials);

struct TruncationEstimate {
  std::int64_t trials = 0;
  std::int64_t rejections = 0;
  double estimate = 0.0;
  double wilson_upper_95 = 0.0;
  double analytic_bound = 0.0;
  double three_sigma_limit = 0.0;
  bool exceeds = false;  // estimate > three_sigma_limit
  double radius = 0.0;
};

// Fraction of fresh ensembles whose compression of x fails `accepts`.
// Trial t uses truncation_trial_stream(cfg.seed, t).
TruncationEstimate estimate_truncation_prob(const DataMatrix& x,
                                            const CovarianceMatrix& sigma_ref,
                                            const ProjectionConfig& cfg,
                                            double delta_max,
                                            std::int64_t trials,
                                            int threads = 1);
std::uint64_t truncation_trial_stream(std::uint64_t seed, std::int64_t trial);

struct ConcentrationPoint {
  double tau_dev = 0.0;
  std::int64_t exceed_count = 0;
  double empirical_tail = 0.0;
  double bound = 0.0;  // 2 exp(-m t^2 / (C1 + C2 t))
  double three_sigma_limit = 0.0;
  bool flagged = false;
};

struct ConcentrationAudit {
  double inner_product = 0.0;
  std::int64_t trials = 0;
  double max_abs_deviation = 0.0;
  std::vector<ConcentrationPoint> points;
  bool any_flagged = false;
};

double concentration_bound(Index m, double tau_dev);

// Empirical tail of |n/m <Phi x, Phi y> - <x, y>| over fresh ensembles.
// Throws InvalidArgument when ||x|| or ||y|| exceeds 1.
ConcentrationAudit concentration_audit(const Vector& x, const Vector& y,
                                       Index m,
                                       std::span<const double> tau_grid,
                                       std::int64_t trials,
                                       std::uint64_t seed, int threads = 1);

}  // namespace compriv

#endif  // COMPRIV_PRIVACY_H_
