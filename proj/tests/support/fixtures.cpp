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

#include "fixtures.hpp"

#include <random>

namespace holevoft::fixtures {

ProtocolSpec sweep_spec(int i) {
  ProtocolSpec s;
  s.dim = 2 + i % 5;
  s.channel = static_cast<ChannelFamily>((i / 5) % 4);
  s.pure_state = (i / 20) % 2 == 1;
  s.degenerate_initial = (i / 40) % 2 == 1;
  s.degenerate_final = (i / 80) % 2 == 1 || i % 3 == 0;
  return s;
}

HermitianOperator random_observable(Index dim, bool degenerate, random::Engine& rng) {
  if (degenerate) return random::random_degenerate_hermitian(dim, {-1.0, 0.0, 1.5}, rng);
  return random::random_hermitian(dim, rng);
}

ttm::TwoTimeProtocol random_protocol(const ProtocolSpec& spec, random::Engine& rng) {
  const Index d = spec.dim;
  DensityMatrix rho = spec.pure_state ? random::random_pure_state(d, rng) : random::random_density(d, d, rng);
  auto initial = measurement::observable_from_hermitian(random_observable(d, spec.degenerate_initial, rng));
  auto final = measurement::observable_from_hermitian(random_observable(d, spec.degenerate_final, rng));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double q = unit(rng);
  channel::KrausChannel c = channel::KrausChannel::identity(d);
  switch (spec.channel) {
    case ChannelFamily::unitary:
      c = channel::KrausChannel({random::random_unitary(d, rng)});
      break;
    case ChannelFamily::depolarizing:
      c = channel::standard_channel(channel::StandardKind::depolarizing, d, q);
      break;
    case ChannelFamily::dephasing:
      c = channel::standard_channel(channel::StandardKind::dephasing, d, q);
      break;
    case ChannelFamily::amplitude_damping:
      c = channel::standard_channel(channel::StandardKind::amplitude_damping, d, q);
      break;
  }
  // rotate the noisy channels so their preferred basis is generic
  if (spec.channel != ChannelFamily::unitary) {
    const ComplexMatrix u = random::random_unitary(d, rng);
    std::vector<ComplexMatrix> ops;
    for (const auto& k : c.ops()) ops.push_back(u * k * u.adjoint());
    c = channel::KrausChannel(std::move(ops));
  }
  return ttm::TwoTimeProtocol(std::move(rho), std::move(initial), std::move(c), std::move(final));
}

}  // namespace holevoft::fixtures
