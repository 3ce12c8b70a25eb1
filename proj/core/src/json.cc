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

#include "compriv/json.h"

#include <cmath>

namespace compriv {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

void to_json(json& j, const MatrixNorms& v) {
  j = json{{"frobenius", v.frobenius},
           {"spectral", v.spectral},
           {"max_entry", v.max_entry}};
}

void to_json(json& j, const AssumptionReport& v) {
  j = json{{"inv_lambda_max", v.inv_lambda_max},
           {"c_min", v.c_min},
           {"c_min_holds", v.c_min_holds},
           {"delta_spectral", v.delta_spectral},
           {"lambda_min_ref", v.lambda_min_ref},
           {"lambda_min_other", v.lambda_min_other},
           {"eigen_stability_applicable", v.eigen_stability_applicable},
           {"eigen_stability_lower", v.eigen_stability_lower},
           {"eigen_stability_ratio", v.eigen_stability_ratio},
           {"eigen_stability_holds", v.eigen_stability_holds},
           {"all_hold", v.all_hold}};
  if (std::isfinite(v.gamma_spectral)) {
    j["gamma_spectral"] = v.gamma_spectral;
  } else {
    j["gamma_spectral"] = nullptr;
  }
}

void to_json(json& j, const PerturbationPair& v) {
  j = json{{"delta", matrix_to_json(v.delta)},
           {"gamma", matrix_to_json(v.gamma)},
           {"delta_norms", v.delta_norms},
           {"gamma_frobenius", v.gamma_frobenius},
           {"gamma_spectral", v.gamma_spectral},
           {"identity_residual", v.identity_residual},
           {"delta_frobenius_bound", v.delta_frobenius_bound},
           {"gamma_frobenius_bound", v.gamma_frobenius_bound},
           {"delta_bound_holds", v.delta_bound_holds},
           {"gamma_bound_holds", v.gamma_bound_holds}};
}

void to_json(json& j, const RegimeDiagnostics& v) {
  j = json{{"suff_ratio", v.suff_ratio},
           {"pca_m_ratio", v.pca_m_ratio},
           {"pca_p_ratio", v.pca_p_ratio},
           {"p_cube_ratio", v.p_cube_ratio}};
}

void to_json(json& j, const KronBounds& v) {
  j = json{{"lower", v.lower}, {"upper", v.upper}};
}

void to_json(json& j, const PrivacyInputs& v) {
  j = json{{"n", v.n},
           {"p", v.p},
           {"m", v.m},
           {"delta_max", v.delta_max},
           {"c", v.c},
           {"radius", v.radius},
           {"truncation_prob_bound", v.truncation_prob_bound},
           {"delta_frobenius", v.delta_frobenius},
           {"delta_max_entry", v.delta_max_entry},
           {"gamma_frobenius", v.gamma_frobenius},
           {"gamma_frobenius_bound", v.gamma_frobenius_bound},
           {"gamma_spectral", v.gamma_spectral},
           {"lambda_min_ref", v.lambda_min_ref},
           {"lambda_min_other", v.lambda_min_other},
           {"sigma_ref_spectral", v.sigma_ref_spectral}};
}

void to_json(json& j, const PrivacyReport& v) {
  j = json{{"alpha_bound", v.alpha_bound},
           {"term_main", v.term_main},
           {"term_A", v.term_A},
           {"renorm_correction", v.renorm_correction},
           {"term_A_bounded", v.term_A_bounded},
           {"alpha_bound_bounded", v.alpha_bound_bounded},
           {"kron_a_exact", v.kron_a_exact},
           {"kron_bounds", v.kron_bounds},
           {"inputs", v.inputs},
           {"assumption", v.assumption},
           {"regime", v.regime}};
}

void to_json(json& j, const TruncationEstimate& v) {
  j = json{{"trials", v.trials},
           {"rejections", v.rejections},
           {"estimate", v.estimate},
           {"wilson_upper_95", v.wilson_upper_95},
           {"analytic_bound", v.analytic_bound},
           {"three_sigma_limit", v.three_sigma_limit},
           {"exceeds", v.exceeds},
           {"radius", v.radius}};
}

void to_json(json& j, const ConcentrationPoint& v) {
  j = json{{"tau_dev", v.tau_dev},
           {"exceed_count", v.exceed_count},
           {"empirical_tail", v.empirical_tail},
           {"bound", v.bound},
           {"three_sigma_limit", v.three_sigma_limit},
           {"flagged", v.flagged}};
}

void to_json(json& j, const ConcentrationAudit& v) {
  j = json{{"inner_product", v.inner_product},
           {"trials", v.trials},
           {"max_abs_deviation", v.max_abs_deviation},
           {"points", v.points},
           {"any_flagged", v.any_flagged}};
}

void to_json(json& j, const PcaReport& v) {
  j = json{{"d", v.d},
           {"delta_d", v.delta_d},
           {"b_frobenius", v.b_frobenius},
           {"b_max_entry", v.b_max_entry},
           {"zb_bound", v.zb_bound},
           {"lambda_min_sum", v.lambda_min_sum},
           {"applicable", v.applicable},
           {"zb_holds", v.zb_holds}};
  j["projector_distance"] =
      v.projector_distance ? json(*v.projector_distance) : json(nullptr);
  if (v.tau_bound) {
    j["tau_bound"] = *v.tau_bound;
    j["max_entry_within_tau"] = v.max_entry_within_tau;
    j["frobenius_within_p_tau"] = v.frobenius_within_p_tau;
    j["frobenius_within_p_max_entry"] = v.frobenius_within_p_max_entry;
  }
}

void to_json(json& j, const BinaryDelta& v) {
  j = json{{"delta_frobenius", v.delta_frobenius},
           {"counted_value", v.counted_value},
           {"stated_formula_value", v.stated_formula_value},
           {"ratio_to_stated", v.ratio_to_stated},
           {"max_entry", v.max_entry}};
}

void to_json(json& j, const BinaryAlphaReport& v) {
  j = json{{"general", v.general},
           {"binary_bound", v.binary_bound},
           {"binary_radius_part", v.binary_radius_part},
           {"general_at_binary_inputs", v.general_at_binary_inputs},
           {"cross_check_residual", v.cross_check_residual}};
}

json compressed_summary(const CompressedMatrix& c) {
  return json{{"retries", c.retries},
              {"threshold", c.threshold},
              {"achieved_deviation", c.achieved_deviation},
              {"seed_used", seed_string(c.seed_used)},
              {"fingerprint", c.source_fingerprint}};
}

std::string seed_string(std::uint64_t seed) { return std::to_string(seed); }

}  // namespace compriv
