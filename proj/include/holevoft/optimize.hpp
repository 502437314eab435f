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

// Derivative-free search over Bob's measurement for a fixed ensemble.

#include <cstdint>
#include <vector>

#include "holevoft/holevo.hpp"

namespace holevoft::holevo {

struct OptimizerConfig {
  int restarts = 8;
  int iterations = 2000;      // per restart
  double initial_step = 0.5;  // relative perturbation of the factors B_k
  double step_growth = 2.0;   // on an accepted move
  double step_decay = 0.8408964152537145;  // 2^{-1/4}, on a rejected move
  double min_step = 1e-10;    // convergence threshold: a restart stops below it
  std::uint64_t seed = 0;
};

struct OptimizationResult {
  Povm povm;
  double information;               // I at the returned POVM (nats)
  double best_initial_information;  // best I over the random starting points
  std::vector<double> restart_information;
  long evaluations = 0;
};

/// (1+1) random-perturbation ascent on the factors B_k of
/// M_k = T^{-1/2} B_k†B_k T^{-1/2}, accepting only strict improvements of I,
/// from `restarts` seeded starting points. Restart r draws from the stream
/// (seed, r), so for a fixed seed the returned I is non-decreasing in the
/// iteration budget. No claim of global optimality.
OptimizationResult optimize_measurement(const Ensemble& e, Index outcomes, const OptimizerConfig& config = {},
                                        const Tolerances& tol = {});

}  // namespace holevoft::holevo
