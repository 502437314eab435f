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

#include "holevoft/cli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "holevoft/errors.hpp"

namespace holevoft::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw InputError("scenario field '" + field + "': " + why);
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where.empty() ? key : where + "." + key, "missing");
  return j.at(key);
}

double parse_number(const json& j, const std::string& field) {
  if (!j.is_number()) bad(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) bad(field, "must be finite");
  return x;
}

std::vector<ComplexMatrix> parse_matrix_list(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) bad(field, "expected a non-empty array of matrices");
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_matrix(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

json matrix_list_to_json(const std::vector<ComplexMatrix>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(matrix_to_json(m));
  return a;
}

StepList parse_steps(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) bad(field, "expected a non-empty array of steps");
  StepList steps;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    steps.push_back({parse_matrix(require(j[i], "hamiltonian", f), f + ".hamiltonian"),
                     parse_number(require(j[i], "duration", f), f + ".duration")});
  }
  return steps;
}

json steps_to_json(const StepList& steps) {
  json a = json::array();
  for (const auto& s : steps) a.push_back({{"hamiltonian", matrix_to_json(s.hamiltonian)}, {"duration", s.duration}});
  return a;
}

ChannelSpec parse_channel(const json& j) {
  if (!j.is_object() || j.size() != 1) bad("channel", "expected exactly one of 'kraus', 'protocol', 'standard'");
  if (j.contains("kraus")) return parse_matrix_list(j["kraus"], "channel.kraus");
  if (j.contains("protocol")) return parse_steps(j["protocol"], "channel.protocol");
  if (j.contains("standard")) {
    const json& s = j["standard"];
    const json& kind = require(s, "kind", "channel.standard");
    if (!kind.is_string()) bad("channel.standard.kind", "expected a string");
    const auto k = channel::parse_standard_kind(kind.get<std::string>());
    if (!k) bad("channel.standard.kind", "unknown channel '" + kind.get<std::string>() + "'");
    const double q = s.contains("q") ? parse_number(s["q"], "channel.standard.q") : 0.0;
    return StandardChannelSpec{*k, q};
  }
  bad("channel", "expected exactly one of 'kraus', 'protocol', 'standard'");
}

std::optional<json> channel_to_json(const ChannelSpec& spec) {
  if (const auto* k = std::get_if<KrausList>(&spec)) return json{{"kraus", matrix_list_to_json(*k)}};
  if (const auto* s = std::get_if<StepList>(&spec)) return json{{"protocol", steps_to_json(*s)}};
  if (const auto* st = std::get_if<StandardChannelSpec>(&spec))
    return json{{"standard", {{"kind", std::string(channel::to_string(st->kind))}, {"q", st->q}}}};
  return std::nullopt;
}

void require_square(const ComplexMatrix& m, Index dim, const std::string& field) {
  if (m.rows() != dim || m.cols() != dim) {
    std::ostringstream os;
    os << "has shape " << m.rows() << "x" << m.cols() << ", expected " << dim << "x" << dim;
    bad(field, os.str());
  }
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::two_time:
      return "two_time";
    case ScenarioKind::jarzynski:
      return "jarzynski";
    case ScenarioKind::holevo:
      return "holevo";
  }
  return "unknown";
}

ComplexMatrix parse_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) bad(field, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) bad(field, "row 0 is not a non-empty array");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) bad(field, "row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& z = j[r][c];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        bad(field, "entry (" + std::to_string(r) + "," + std::to_string(c) + ") is not a [re, im] pair");
      const double re = z[0].get<double>(), im = z[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im))
        bad(field, "entry (" + std::to_string(r) + "," + std::to_string(c) + ") is not finite");
      m(static_cast<Index>(r), static_cast<Index>(c)) = Complex(re, im);
    }
  }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Tolerances apply_tolerance_overrides(Tolerances t, const json& overrides) {
  if (overrides.is_null()) return t;
  if (!overrides.is_object()) bad("tolerances", "expected an object");
  for (const auto& [key, value] : overrides.items()) {
    const double v = parse_number(value, "tolerances." + key);
    if (key == "hermiticity") t.hermiticity = v;
    else if (key == "psd") t.psd = v;
    else if (key == "trace") t.trace = v;
    else if (key == "degeneracy") t.degeneracy = v;
    else if (key == "rank") t.rank = v;
    else if (key == "proj") t.proj = v;
    else if (key == "ortho") t.ortho = v;
    else if (key == "recon") t.recon = v;
    else if (key == "prob_floor") t.prob_floor = v;
    else bad("tolerances." + key, "unknown tolerance");
  }
  t.validate();
  return t;
}

json tolerances_to_json(const Tolerances& t) {
  return {{"hermiticity", t.hermiticity}, {"psd", t.psd},     {"trace", t.trace},
          {"degeneracy", t.degeneracy},   {"rank", t.rank},   {"proj", t.proj},
          {"ortho", t.ortho},             {"recon", t.recon}, {"prob_floor", t.prob_floor}};
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) throw InputError("scenario must be a JSON object");
  const json& schema = require(j, "schema", "");
  if (!schema.is_number_integer() || schema.get<int>() != kSchemaVersion)
    bad("schema", "unsupported version " + schema.dump() + ", expected " + std::to_string(kSchemaVersion));
  const json& kind = require(j, "kind", "");
  if (!kind.is_string()) bad("kind", "expected a string");

  Scenario s;
  const std::string k = kind.get<std::string>();
  if (k == "two_time") s.kind = ScenarioKind::two_time;
  else if (k == "jarzynski") s.kind = ScenarioKind::jarzynski;
  else if (k == "holevo") s.kind = ScenarioKind::holevo;
  else bad("kind", "unknown kind '" + k + "'");

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad("seed", "expected a non-negative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tolerances")) {
    apply_tolerance_overrides({}, j["tolerances"]);  // validate early
    s.tolerance_overrides = j["tolerances"];
  }

  switch (s.kind) {
    case ScenarioKind::two_time: {
      s.initial_state = parse_matrix(require(j, "initial_state", ""), "initial_state");
      s.initial_observable = parse_matrix(require(j, "initial_observable", ""), "initial_observable");
      s.final_observable = parse_matrix(require(j, "final_observable", ""), "final_observable");
      if (j.contains("final_suppression")) s.final_suppression = parse_matrix(j["final_suppression"], "final_suppression");
      if (j.contains("channel")) s.channel = parse_channel(j["channel"]);
      const Index d = s.initial_state.rows();
      require_square(s.initial_state, d, "initial_state");
      require_square(s.initial_observable, d, "initial_observable");
      require_square(s.final_observable, d, "final_observable");
      if (s.final_suppression) require_square(*s.final_suppression, d, "final_suppression");
      break;
    }
    case ScenarioKind::jarzynski: {
      s.beta = parse_number(require(j, "beta", ""), "beta");
      s.h0 = parse_matrix(require(j, "h0", ""), "h0");
      s.protocol = parse_steps(require(j, "protocol", ""), "protocol");
      require_square(s.h0, s.h0.rows(), "h0");
      for (std::size_t i = 0; i < s.protocol.size(); ++i)
        require_square(s.protocol[i].hamiltonian, s.h0.rows(), "protocol[" + std::to_string(i) + "].hamiltonian");
      break;
    }
    case ScenarioKind::holevo: {
      const json& e = require(j, "ensemble", "");
      const json& priors = require(e, "priors", "ensemble");
      if (!priors.is_array() || priors.empty()) bad("ensemble.priors", "expected a non-empty array");
      for (std::size_t i = 0; i < priors.size(); ++i)
        s.priors.push_back(parse_number(priors[i], "ensemble.priors[" + std::to_string(i) + "]"));
      s.states = parse_matrix_list(require(e, "states", "ensemble"), "ensemble.states");
      if (s.states.size() != s.priors.size()) bad("ensemble", "priors and states differ in length");
      const Index d = s.states.front().rows();
      for (std::size_t i = 0; i < s.states.size(); ++i) require_square(s.states[i], d, "ensemble.states[" + std::to_string(i) + "]");
      if (j.contains("povm")) {
        s.povm = parse_matrix_list(j["povm"], "povm");
        for (std::size_t i = 0; i < s.povm.size(); ++i) require_square(s.povm[i], d, "povm[" + std::to_string(i) + "]");
      }
      break;
    }
  }
  return s;
}

json to_json(const Scenario& s) {
  json j{{"schema", kSchemaVersion}, {"kind", std::string(to_string(s.kind))}};
  if (s.seed) j["seed"] = *s.seed;
  if (!s.tolerance_overrides.empty()) j["tolerances"] = s.tolerance_overrides;
  switch (s.kind) {
    case ScenarioKind::two_time:
      j["initial_state"] = matrix_to_json(s.initial_state);
      j["initial_observable"] = matrix_to_json(s.initial_observable);
      j["final_observable"] = matrix_to_json(s.final_observable);
      if (s.final_suppression) j["final_suppression"] = matrix_to_json(*s.final_suppression);
      if (auto c = channel_to_json(s.channel)) j["channel"] = *c;
      break;
    case ScenarioKind::jarzynski:
      j["beta"] = s.beta;
      j["h0"] = matrix_to_json(s.h0);
      j["protocol"] = steps_to_json(s.protocol);
      break;
    case ScenarioKind::holevo:
      j["ensemble"] = {{"priors", s.priors}, {"states", matrix_list_to_json(s.states)}};
      if (!s.povm.empty()) j["povm"] = matrix_list_to_json(s.povm);
      break;
  }
  return j;
}

json read_json_file(const std::string& path, std::string* raw_bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  if (raw_bytes) *raw_bytes = bytes;
  try {
    return json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Tolerances scenario_tolerances(const Scenario& s, const Tolerances& base) {
  return apply_tolerance_overrides(base, s.tolerance_overrides);
}

channel::EvolutionProtocol build_protocol(const StepList& steps, const Tolerances& tol) {
  std::vector<channel::ProtocolStep> ps;
  for (const auto& s : steps) ps.push_back({HermitianOperator(s.hamiltonian, tol), s.duration});
  return channel::EvolutionProtocol(std::move(ps));
}

channel::KrausChannel build_channel(const ChannelSpec& spec, Index dim, const Tolerances& tol) {
  if (const auto* k = std::get_if<KrausList>(&spec)) {
    for (std::size_t i = 0; i < k->size(); ++i) require_square((*k)[i], dim, "channel.kraus[" + std::to_string(i) + "]");
    return channel::KrausChannel(*k, tol);
  }
  if (const auto* s = std::get_if<StepList>(&spec)) {
    for (std::size_t i = 0; i < s->size(); ++i)
      require_square((*s)[i].hamiltonian, dim, "channel.protocol[" + std::to_string(i) + "].hamiltonian");
    return channel::unitary_from_protocol(build_protocol(*s, tol), tol);
  }
  if (const auto* st = std::get_if<StandardChannelSpec>(&spec)) return channel::standard_channel(st->kind, dim, st->q, tol);
  return channel::KrausChannel::identity(dim);
}

ttm::TwoTimeProtocol build_two_time(const Scenario& s, const Tolerances& tol) {
  if (s.kind != ScenarioKind::two_time) throw InputError("scenario kind is " + std::string(to_string(s.kind)) + ", expected two_time");
  const Index d = s.initial_state.rows();
  DensityMatrix rho(s.initial_state, tol);
  auto initial = measurement::observable_from_hermitian(HermitianOperator(s.initial_observable, tol), tol);
  const HermitianOperator f(s.final_observable, tol);
  auto final = s.final_suppression
                   ? measurement::observable_from_compression(f, Projector::from_matrix(*s.final_suppression, tol), tol)
                   : measurement::observable_from_hermitian(f, tol);
  return ttm::TwoTimeProtocol(std::move(rho), std::move(initial), build_channel(s.channel, d, tol), std::move(final));
}

holevo::Ensemble build_ensemble(const Scenario& s, const Tolerances& tol) {
  if (s.kind != ScenarioKind::holevo) throw InputError("scenario kind is " + std::string(to_string(s.kind)) + ", expected holevo");
  std::vector<DensityMatrix> states;
  for (const auto& m : s.states) states.emplace_back(m, tol);
  return holevo::Ensemble(s.priors, std::move(states), tol);
}

holevo::CqChannelInstance build_instance(const Scenario& s, const Tolerances& tol) {
  auto e = build_ensemble(s, tol);
  if (s.povm.empty()) bad("povm", "missing");
  return holevo::CqChannelInstance(std::move(e), measurement::Povm(s.povm, tol));
}

}  // namespace holevoft::cli
