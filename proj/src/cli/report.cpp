// Copyright 2026 The holevoft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "holevoft/cli/report.hpp"

#include <cmath>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "holevoft/cli/scenario.hpp"
#include "holevoft/errors.hpp"

namespace holevoft::cli {

using nlohmann::json;

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

json checks_to_json(const std::vector<Check>& checks) {
  json a = json::array();
  for (const auto& c : checks)
    a.push_back({{"name", c.name}, {"violation", c.violation}, {"tolerance", c.tolerance}, {"passed", c.passed}});
  return a;
}

json atoms_to_json(const ttm::DeltaDistribution& d) {
  json a = json::array();
  for (const auto& atom : d.atoms) a.push_back({{"delta_a", atom.delta}, {"probability", atom.probability}});
  return a;
}

namespace {

json joint_to_json(const ttm::JointDistribution& j) {
  json rows = json::array();
  for (Index m = 0; m < j.entries.rows(); ++m) {
    json row = json::array();
    for (Index n = 0; n < j.entries.cols(); ++n) row.push_back(j.entries(m, n));
    rows.push_back(std::move(row));
  }
  json finals = json::array();
  for (double v : j.final_values) finals.push_back(std::isinf(v) ? json("inf") : json(v));
  return {{"initial_values", j.initial_values}, {"final_values", finals}, {"entries", rows}};
}

json real_matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json ft_report_to_json(const ttm::FtReport& r) {
  return {{"mean_exp_neg_delta_a", r.lhs},
          {"gamma", r.gamma},
          {"mean_delta_a", r.mean_delta_a},
          {"jensen_slack", r.jensen_slack},
          {"max_violation", r.max_violation},
          {"joint", joint_to_json(r.joint)},
          {"atoms", atoms_to_json(r.delta)},
          {"checks", checks_to_json(r.checks)},
          {"passed", r.passed()}};
}

json jarzynski_report_to_json(const ttm::JarzynskiReport& r) {
  return {{"beta", r.beta},
          {"mean_work", r.mean_work},
          {"delta_free_energy", r.delta_free_energy},
          {"mean_exp_work", r.mean_exp_work},
          {"z_initial", r.z_initial},
          {"z_final", r.z_final},
          {"partition_ratio", r.partition_ratio},
          {"fluctuation", ft_report_to_json(r.ft)},
          {"checks", checks_to_json(r.checks)},
          {"passed", r.passed()}};
}

json holevo_report_to_json(const holevo::HolevoReport& r) {
  std::vector<double> marginal(r.marginal.data(), r.marginal.data() + r.marginal.size());
  return {{"mutual_information", r.mutual_information},
          {"chi", r.chi},
          {"shannon", r.shannon},
          {"conditional_term", r.conditional_term},
          {"gamma", r.gamma},
          {"gamma_distribution", r.gamma_distribution},
          {"gamma_efficacy", r.gamma_efficacy},
          {"neg_log_gamma", r.neg_log_gamma},
          {"mean_delta_a", r.mean_delta_a},
          {"mean_delta_a_trace", r.mean_delta_a_trace},
          {"chain", {{"gamma", r.chain.gamma}, {"g1", r.chain.g1}, {"g2", r.chain.g2}}},
          {"equality_residual", r.equality_residual},
          {"bound_slack", r.bound_slack},
          {"max_infinite_probability", r.max_infinite_probability},
          {"conditional", real_matrix_to_json(r.conditional)},
          {"marginal", marginal},
          {"atoms", atoms_to_json(r.delta)},
          {"checks", checks_to_json(r.checks)},
          {"passed", r.passed()}};
}

json optimization_to_json(const holevo::OptimizationResult& r) {
  json povm = json::array();
  for (const auto& m : r.povm.elements()) povm.push_back(matrix_to_json(m.matrix()));
  return {{"mutual_information", r.information},
          {"best_initial_information", r.best_initial_information},
          {"restart_information", r.restart_information},
          {"evaluations", r.evaluations},
          {"povm", povm}};
}

std::string csv_header() {
  return fmt::format(
      "# holevoft holevo-random csv v{} (information in nats)\n"
      "trial,seed,d,J,K,state_kind,I,chi,gamma,neg_log_gamma,bound_slack,g1,g2,equality_residual,"
      "mean_delta_a,bound_ok,chain_ok,route_ok,passed\n",
      kCsvVersion);
}

namespace {

bool checks_pass(const std::vector<Check>& checks, std::initializer_list<std::string_view> names) {
  for (const auto& c : checks)
    for (auto n : names)
      if (c.name == n && !c.passed) return false;
  return true;
}

}  // namespace

std::string csv_row(const RandomTrialRow& row) {
  const auto& r = row.report;
  const bool bound_ok = checks_pass(r.checks, {"sharpened_bound", "neg_log_gamma_nonnegative", "gamma_at_most_one"});
  const bool chain_ok = checks_pass(r.checks, {"chain_gamma_le_g1", "chain_g1_le_g2", "chain_g2_unity"});
  const bool route_ok = checks_pass(r.checks, {"route_agreement"});
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", row.trial, row.seed, row.dim, row.words,
                     row.outcomes, row.state_kind, format_double(r.mutual_information), format_double(r.chi),
                     format_double(r.gamma), format_double(r.neg_log_gamma), format_double(r.bound_slack),
                     format_double(r.chain.g1), format_double(r.chain.g2), format_double(r.equality_residual),
                     format_double(r.mean_delta_a), int(bound_ok), int(chain_ok), int(route_ok), int(r.passed()));
}

}  // namespace holevoft::cli
