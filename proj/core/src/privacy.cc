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

#include "compriv/privacy.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "compriv/error.h"
#include "compriv/parallel.h"

namespace compriv {
namespace {

constexpr Index kMaxQuadratureP = 40;

double log_2np(Index n, Index p) {
  return std::log(2.0 * static_cast<double>(n) * static_cast<double>(p));
}

void require_same_width(const CovarianceMatrix& a, const CovarianceMatrix& b) {
  if (a.p() != b.p()) {
    throw Error(ErrorKind::kShapeMismatch,
                "covariance widths " + std::to_string(a.p()) + " and " +
                    std::to_string(b.p()) + " differ");
  }
}

void require_probability(double prob, const char* name) {
  if (!(prob >= 0.0 && prob < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(name) + " must lie in [0, 1)");
  }
}

}  // namespace

RegimeDiagnostics regime_diagnostics(Index n, Index p, Index m,
                                     double delta_max) {
  if (n < 1 || p < 1 || m < 1 || !(delta_max >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "regime diagnostics need positive n, p, m and delta_max >= 0");
  }
  const double nd = static_cast<double>(n);
  const double pd = static_cast<double>(p);
  const double md = static_cast<double>(m);
  const double l2np = log_2np(n, p);
  RegimeDiagnostics r;
  r.suff_ratio = delta_max * pd * pd * std::sqrt(md * l2np);
  r.pca_m_ratio = md / (pd * pd * l2np);
  r.pca_p_ratio = pd * pd * std::log(nd) * std::sqrt(md / nd);
  r.p_cube_ratio = pd * std::sqrt(l2np) / std::cbrt(std::sqrt(nd));
  return r;
}

double kron_A_exact(const CovarianceMatrix& s1, const CovarianceMatrix& sj) {
  require_same_width(s1, sj);
  const double ld1 = log_det_pd(s1);
  const double ldj = log_det_pd(sj);
  // tr(Gamma S1) = tr(Sj^{-1} S1) - p.
  const double trace = sj.solve(s1.entries()).trace() -
                       static_cast<double>(s1.p());
  return (ldj - ld1) + trace;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_unit(
    int nodes) {
  if (nodes < 1) {
    throw Error(ErrorKind::kInvalidArgument, "need at least one node");
  }
  std::vector<double> x(nodes), w(nodes);
  const int half = (nodes + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (nodes + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= nodes; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = nodes * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double weight = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = (1.0 - z) / 2.0;
    x[nodes - 1 - i] = (1.0 + z) / 2.0;
    w[i] = w[nodes - 1 - i] = weight / 2.0;
  }
  return {x, w};
}

double kron_A_quadrature(const CovarianceMatrix& s1,
                         const CovarianceMatrix& sj, int nodes) {
  require_same_width(s1, sj);
  const Index p = s1.p();
  if (p > kMaxQuadratureP) {
    throw Error(ErrorKind::kTooLargeP,
                "p = " + std::to_string(p) +
                    " exceeds the Kronecker quadrature limit of 40");
  }
  const Matrix theta1 = s1.inverse();
  const Matrix gamma = sj.inverse() - theta1;
  const Eigen::Map<const Vector> vec_gamma(gamma.data(), gamma.size());
  const auto [v, w] = gauss_legendre_unit(nodes);
  double total = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const Matrix path = theta1 + v[k] * gamma;
    Eigen::LLT<Matrix> llt(path);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorKind::kIndefiniteAlongPath,
                  "S1^{-1} + v Gamma is not positive definite at v = " +
                      std::to_string(v[k]));
    }
    const Matrix inv = llt.solve(Matrix::Identity(p, p));
    const Matrix kron = Eigen::kroneckerProduct(inv, inv).eval();
    total += w[k] * (1.0 - v[k]) * vec_gamma.dot(kron * vec_gamma);
  }
  return total;
}

KronBounds kron_A_bounds(const CovarianceMatrix& s1,
                         const CovarianceMatrix& sj) {
  require_same_width(s1, sj);
  const Matrix gamma = sj.inverse() - s1.inverse();
  const double gamma_f2 = gamma.squaredNorm();
  const double gamma_2 = matrix_norms(gamma).spectral;
  const double s1_norm = s1.eigmax();
  const double product = s1_norm * gamma_2;
  if (!(product < 1.0)) {
    throw Error(ErrorKind::kPreconditionFailed,
                "||S1||_2 ||Gamma||_2 = " + std::to_string(product) +
                    " >= 1; the Kronecker-integral bounds do not apply");
  }
  const double lmin = s1.eigmin();
  KronBounds b;
  b.lower = gamma_f2 * lmin * lmin /
            (2.0 * (1.0 + lmin * gamma_2) * (1.0 + lmin * gamma_2));
  b.upper = gamma_f2 * s1_norm * s1_norm /
            (2.0 * (1.0 - product) * (1.0 - product));
  return b;
}

double alpha_closed_form(Index n, Index p, Index m, double c, double delta_max,
                         double delta_frobenius, double lambda_min_ref,
                         double lambda_min_other, double sigma_ref_spectral) {
  const double pd = static_cast<double>(p);
  const double lambdas = lambda_min_ref * lambda_min_other;
  const double spread = acceptance_radius(n, p, m, delta_max, c) +
                        2.0 * delta_frobenius * sigma_ref_spectral *
                            sigma_ref_spectral / (pd * lambdas);
  return static_cast<double>(m) * pd * delta_frobenius / (2.0 * lambdas) *
         spread;
}

PrivacyReport alpha_bound(const CovarianceMatrix& s1,
                          const CovarianceMatrix& si, Index n, Index p,
                          Index m, double delta_max, double c,
                          double truncation_prob_bound, double c_min) {
  require_same_width(s1, si);
  if (s1.p() != p) {
    throw Error(ErrorKind::kShapeMismatch,
                "p does not match the covariance width");
  }
  require_probability(truncation_prob_bound, "truncation_prob_bound");
  if (!(c >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "c must be >= 0");

  PrivacyReport r;
  r.assumption = check_assumptions(s1, si, c_min);
  const PerturbationPair pair = perturbation_pair(s1, si);
  const KronBounds kron = kron_A_bounds(s1, si);

  PrivacyInputs& in = r.inputs;
  in.n = n;
  in.p = p;
  in.m = m;
  in.delta_max = delta_max;
  in.c = c;
  in.radius = acceptance_radius(n, p, m, delta_max, c);
  in.truncation_prob_bound = truncation_prob_bound;
  in.delta_frobenius = pair.delta_norms.frobenius;
  in.delta_max_entry = pair.delta_norms.max_entry;
  in.gamma_frobenius = pair.gamma_frobenius;
  in.gamma_frobenius_bound = pair.gamma_frobenius_bound;
  in.gamma_spectral = pair.gamma_spectral;
  in.lambda_min_ref = s1.eigmin();
  in.lambda_min_other = si.eigmin();
  in.sigma_ref_spectral = s1.eigmax();

  const double md = static_cast<double>(m);
  const double pd = static_cast<double>(p);
  const double lambdas = in.lambda_min_ref * in.lambda_min_other;
  const double s1_sq = in.sigma_ref_spectral * in.sigma_ref_spectral;
  const double shrink = 1.0 - in.sigma_ref_spectral * in.gamma_spectral;

  r.term_main = md * pd * in.delta_frobenius / (2.0 * lambdas) * in.radius;
  r.term_A = md * in.gamma_frobenius * in.gamma_frobenius * s1_sq /
             (2.0 * shrink * shrink);
  r.renorm_correction = -2.0 * std::log1p(-truncation_prob_bound);
  r.alpha_bound = r.term_main + r.term_A + r.renorm_correction;

  r.term_A_bounded = md * in.delta_frobenius * in.delta_frobenius * s1_sq /
                     (lambdas * lambdas);
  r.alpha_bound_bounded = r.term_main + r.term_A_bounded + r.renorm_correction;

  r.kron_a_exact = kron_A_exact(s1, si);
  r.kron_bounds = kron;
  r.regime = regime_diagnostics(n, p, m, delta_max);
  return r;
}

double log_density_ratio(const Matrix& compressed, const CovarianceMatrix& s1,
                         const CovarianceMatrix& s2, double trunc_p1,
                         double trunc_p2) {
  require_same_width(s1, s2);
  if (compressed.cols() != s1.p()) {
    throw Error(ErrorKind::kShapeMismatch,
                "compressed output width does not match the covariances");
  }
  require_probability(trunc_p1, "trunc_p1");
  require_probability(trunc_p2, "trunc_p2");
  const double m = static_cast<double>(compressed.rows());
  const Matrix xt = compressed.transpose();
  // sum_i x_i^T S^{-1} x_i = ||L^{-1} Xc^T||_F^2.
  const double q1 = s1.cholesky().matrixL().solve(xt).squaredNorm();
  const double q2 = s2.cholesky().matrixL().solve(xt).squaredNorm();
  const double logdets = log_det_pd(s2) - log_det_pd(s1);
  return 0.5 * m * logdets + 0.5 * (q2 - q1) + std::log1p(-trunc_p2) -
         std::log1p(-trunc_p1);
}

double analytic_truncation_bound(Index n, Index p, Index m, double c) {
  const double nd = static_cast<double>(n);
  if (static_cast<double>(m) >= min_m_for_truncation_bound(n, p)) {
    return 1.0 / (nd * nd);
  }
  const double pd = static_cast<double>(p);
  const double tau = c * std::sqrt(log_2np(n, p) / static_cast<double>(m));
  const double exponent = -static_cast<double>(m) * tau * tau /
                          (concentration_c1() + concentration_c2() * tau);
  return std::min(1.0, pd * (pd + 1.0) * std::exp(exponent));
}

double wilson_upper(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0) return 1.0;
  const double nt = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double centre = phat + z2 / (2.0 * nt);
  const double spread =
      z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt));
  return std::min(1.0, (centre + spread) / (1.0 + z2 / nt));
}

double three_sigma_limit(double bound, std::int64_t trials) {
  const double b = std::clamp(bound, 0.0, 1.0);
  return b + 3.0 * std::sqrt(b * (1.0 - b) / static_cast<double>(trials));
}

std::uint64_t truncation_trial_stream(std::uint64_t seed, std::int64_t trial) {
  return derive_stream(seed, {0x7472 /* trial tag */,
                              static_cast<std::uint64_t>(trial)});
}

TruncationEstimate estimate_truncation_prob(const DataMatrix& x,
                                            const CovarianceMatrix& sigma_ref,
                                            const ProjectionConfig& cfg,
                                            double delta_max,
                                            std::int64_t trials,
                                            int threads) {
  cfg.validate();
  if (trials < 1) {
    throw Error(ErrorKind::kInvalidArgument, "trials must be >= 1");
  }
  if (sigma_ref.p() != x.p()) {
    throw Error(ErrorKind::kShapeMismatch,
                "reference covariance width does not match input");
  }
  TruncationEstimate out;
  out.trials = trials;
  out.radius = acceptance_radius(x.n(), x.p(), cfg.m, delta_max, cfg.c);
  out.rejections = parallel_reduce(
      trials, threads, std::int64_t{0},
      [&](std::int64_t begin, std::int64_t end) {
        Compressor compressor(x, cfg.m);
        std::int64_t rejected = 0;
        for (std::int64_t t = begin; t < end; ++t) {
          const Matrix& draw =
              compressor.compress(truncation_trial_stream(cfg.seed, t));
          if (!accepts(draw, sigma_ref, out.radius).accepted) ++rejected;
        }
        return rejected;
      },
      [](std::int64_t a, std::int64_t b) { return a + b; });
  out.estimate = static_cast<double>(out.rejections) / static_cast<double>(trials);
  out.wilson_upper_95 = wilson_upper(out.rejections, trials);
  out.analytic_bound = analytic_truncation_bound(x.n(), x.p(), cfg.m, cfg.c);
  out.three_sigma_limit = three_sigma_limit(out.analytic_bound, trials);
  out.exceeds = out.estimate > out.three_sigma_limit;
  return out;
}

double concentration_bound(Index m, double tau_dev) {
  return 2.0 * std::exp(-static_cast<double>(m) * tau_dev * tau_dev /
                        (concentration_c1() + concentration_c2() * tau_dev));
}

ConcentrationAudit concentration_audit(const Vector& x, const Vector& y,
                                       Index m,
                                       std::span<const double> tau_grid,
                                       std::int64_t trials,
                                       std::uint64_t seed, int threads) {
  if (x.size() != y.size() || x.size() < 1) {
    throw Error(ErrorKind::kShapeMismatch, "x and y must share length n >= 1");
  }
  if (x.norm() > 1.0 + 1e-12 || y.norm() > 1.0 + 1e-12) {
    throw Error(ErrorKind::kInvalidArgument, "x and y must have norm <= 1");
  }
  if (m < 1 || trials < 1) {
    throw Error(ErrorKind::kInvalidArgument, "m and trials must be >= 1");
  }
  for (double tau : tau_grid) {
    if (!(tau > 0.0)) {
      throw Error(ErrorKind::kInvalidArgument, "tau_dev must be positive");
    }
  }
  const Index n = x.size();
  const double inner = x.dot(y);
  struct Tally {
    std::vector<std::int64_t> counts;
    double max_dev = 0.0;
  };
  const Tally init{std::vector<std::int64_t>(tau_grid.size(), 0), 0.0};
  const Tally tally = parallel_reduce(
      trials, threads, init,
      [&](std::int64_t begin, std::int64_t end) {
        Tally local = init;
        for (std::int64_t t = begin; t < end; ++t) {
          NormalSource normal(derive_stream(seed, {static_cast<std::uint64_t>(t)}));
          // Row i of Phi is z_i / sqrt(n), so n/m <Phi x, Phi y> is the mean
          // of (z_i . x)(z_i . y) over the m rows.
          double acc = 0.0;
          for (Index i = 0; i < m; ++i) {
            double a = 0.0, b = 0.0;
            for (Index j = 0; j < n; ++j) {
              const double z = normal();
              a += z * x(j);
              b += z * y(j);
            }
            acc += a * b;
          }
          const double dev = std::abs(acc / static_cast<double>(m) - inner);
          local.max_dev = std::max(local.max_dev, dev);
          for (std::size_t k = 0; k < tau_grid.size(); ++k) {
            if (dev >= tau_grid[k]) ++local.counts[k];
          }
        }
        return local;
      },
      [](Tally a, const Tally& b) {
        for (std::size_t k = 0; k < a.counts.size(); ++k) a.counts[k] += b.counts[k];
        a.max_dev = std::max(a.max_dev, b.max_dev);
        return a;
      });

  ConcentrationAudit out;
  out.inner_product = inner;
  out.trials = trials;
  out.max_abs_deviation = tally.max_dev;
  for (std::size_t k = 0; k < tau_grid.size(); ++k) {
    ConcentrationPoint pt;
    pt.tau_dev = tau_grid[k];
    pt.exceed_count = tally.counts[k];
    pt.empirical_tail =
        static_cast<double>(pt.exceed_count) / static_cast<double>(trials);
    pt.bound = concentration_bound(m, pt.tau_dev);
    pt.three_sigma_limit = three_sigma_limit(pt.bound, trials);
    pt.flagged = pt.empirical_tail > pt.three_sigma_limit;
    out.any_flagged = out.any_flagged || pt.flagged;
    out.points.push_back(pt);
  }
  return out;
}

}  // namespace compriv
