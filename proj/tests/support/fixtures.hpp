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

#include "holevoft/random.hpp"
#include "holevoft/ttm.hpp"

namespace holevoft::fixtures {

enum class ChannelFamily { unitary, depolarizing, dephasing, amplitude_damping };

struct ProtocolSpec {
  Index dim = 2;
  ChannelFamily channel = ChannelFamily::unitary;
  bool pure_state = false;
  bool degenerate_initial = false;
  bool degenerate_final = false;
};

/// Deterministic spec for the i-th protocol of a sweep; cycles every family.
ProtocolSpec sweep_spec(int i);

ttm::TwoTimeProtocol random_protocol(const ProtocolSpec& spec, random::Engine& rng);

/// Observable with random eigenbasis; degenerate ones draw from a few integer levels.
HermitianOperator random_observable(Index dim, bool degenerate, random::Engine& rng);

}  // namespace holevoft::fixtures
