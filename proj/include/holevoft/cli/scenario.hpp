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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "holevoft/channel.hpp"
#include "holevoft/holevo.hpp"
#include "holevoft/ttm.hpp"

namespace holevoft::cli {

inline constexpr int kSchemaVersion = 1;

enum class ScenarioKind { two_time, jarzynski, holevo };

struct RawStep {
  ComplexMatrix hamiltonian;
  double duration = 0.0;
};

struct StandardChannelSpec {
  channel::StandardKind kind = channel::StandardKind::identity;
  double q = 0.0;
};

using KrausList = std::vector<ComplexMatrix>;
using StepList = std::vector<RawStep>;
/// Absent channel means identity.
using ChannelSpec = std::variant<std::monostate, KrausList, StepList, StandardChannelSpec>;

/// Matrices are kept exactly as read so that serialization round-trips.
struct Scenario {
  ScenarioKind kind = ScenarioKind::two_time;
  std::optional<std::uint64_t> seed;
  nlohmann::json tolerance_overrides = nlohmann::json::object();

  // two_time
  ComplexMatrix initial_state;
  ComplexMatrix initial_observable;
  ComplexMatrix final_observable;
  std::optional<ComplexMatrix> final_suppression;
  ChannelSpec channel;

  // jarzynski
  double beta = 1.0;
  ComplexMatrix h0;
  StepList protocol;

  // holevo
  std::vector<double> priors;
  std::vector<ComplexMatrix> states;
  std::vector<ComplexMatrix> povm;  // may be empty for optimize
};

std::string_view to_string(ScenarioKind kind);

/// Throws InputError naming the offending field.
Scenario parse_scenario(const nlohmann::json& j);
nlohmann::json to_json(const Scenario& s);

/// Reads the file and parses it; JSON syntax errors become InputError.
nlohmann::json read_json_file(const std::string& path, std::string* raw_bytes = nullptr);

ComplexMatrix parse_matrix(const nlohmann::json& j, const std::string& field);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

/// Applies {"psd": 1e-9, ...}; unknown keys and non-positive values are rejected.
Tolerances apply_tolerance_overrides(Tolerances base, const nlohmann::json& overrides);
nlohmann::json tolerances_to_json(const Tolerances& t);

Tolerances scenario_tolerances(const Scenario& s, const Tolerances& base = {});

channel::KrausChannel build_channel(const ChannelSpec& spec, Index dim, const Tolerances& tol);
ttm::TwoTimeProtocol build_two_time(const Scenario& s, const Tolerances& tol);
channel::EvolutionProtocol build_protocol(const StepList& steps, const Tolerances& tol);
holevo::Ensemble build_ensemble(const Scenario& s, const Tolerances& tol);
holevo::CqChannelInstance build_instance(const Scenario& s, const Tolerances& tol);

}  // namespace holevoft::cli
