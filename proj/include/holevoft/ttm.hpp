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

// Two-time measurement statistics: measure A^i, evolve with a channel,
// measure A^f. The random variable Δa = a^f_n − a^i_m satisfies
// ⟨e^{−Δa}⟩ = γ with γ = tr{e^{−A^f} E(M^i(ρ₀) e^{A^i})}, and by Jensen
// ⟨Δa⟩ ≥ −ln γ.

#include <vector>

#include "holevoft/channel.hpp"
#include "holevoft/check.hpp"
#include "holevoft/core.hpp"
#include "holevoft/measurement.hpp"

namespace holevoft::ttm {

using channel::KrausChannel;
using measurement::ExtendedObservable;

class TwoTimeProtocol {
 public:
  /// All dimensions must agree and the initial observable must be finite.
  TwoTimeProtocol(DensityMatrix initial_state, ExtendedObservable initial_observable, KrausChannel channel,
                  ExtendedObservable final_observable);

  const DensityMatrix& initial_state() const noexcept { return initial_state_; }
  const ExtendedObservable& initial_observable() const noexcept { return initial_observable_; }
  const KrausChannel& channel() const noexcept { return channel_; }
  const ExtendedObservable& final_observable() const noexcept { return final_observable_; }
  Index dim() const noexcept { return initial_state_.dim(); }

 private:
  DensityMatrix initial_state_;
  ExtendedObservable initial_observable_;
  KrausChannel channel_;
  ExtendedObservable final_observable_;
};

/// p_{m→n} = tr{Π^f_n E(Π^i_m ρ₀ Π^i_m)}; rows index initial branches,
/// columns final branches. Entries on an infinite final branch are zero.
struct JointDistribution {
  Eigen::MatrixXd entries;
  std::vector<double> initial_values;
  std::vector<double> final_values;  // may contain +infinity

  double total() const { return entries.sum(); }
};

struct Atom {
  double delta;
  double probability;
};

struct DeltaDistribution {
  std::vector<Atom> atoms;  // ascending in delta

  double total() const;
  double mean() const;
  /// ⟨e^{−Δa}⟩.
  double mean_exp_neg() const;
};

/// Throws IllPosedError when an infinite final branch receives probability
/// above prob_floor.
JointDistribution joint_distribution(const TwoTimeProtocol& p, const Tolerances& tol = {});

/// Aggregates entries by Δa. Values within degeneracy_tol·max(1, |Δa|) of
/// their neighbour merge into one atom at the probability-weighted mean;
/// zero-probability entries and infinite final branches are dropped.
DeltaDistribution delta_a_distribution(const JointDistribution& j, const Tolerances& tol = {});

/// G(s) = Σ p e^{i s Δa}; G(i) = ⟨e^{−Δa}⟩.
Complex characteristic_function(const JointDistribution& j, Complex s, const Tolerances& tol = {});

/// γ by the trace formula. The exponential of the final observable is
/// compressed away from its infinite branch.
double efficacy(const TwoTimeProtocol& p, const Tolerances& tol = {});

struct FtTolerances {
  double identity = 1e-9;  // relative to max(1, |γ|)
  double jensen = 1e-8;
};

struct FtReport {
  double lhs = 0.0;    // ⟨e^{−Δa}⟩ from the distribution
  double gamma = 0.0;  // trace formula
  double mean_delta_a = 0.0;
  double jensen_slack = 0.0;   // ⟨Δa⟩ + ln γ
  double max_violation = 0.0;  // |lhs − γ| / max(1, |γ|)
  JointDistribution joint;
  DeltaDistribution delta;
  std::vector<Check> checks;

  bool passed() const { return all_passed(checks); }
};

FtReport verify_ft(const TwoTimeProtocol& p, const FtTolerances& ft_tol = {}, const Tolerances& tol = {});

/// e^{−βH}/Z.
DensityMatrix gibbs_state(const HermitianOperator& h, double beta, const Tolerances& tol = {});

/// ln tr e^{−βH}, evaluated with a ground-state shift.
double log_partition_function(const HermitianOperator& h, double beta);

struct JarzynskiReport {
  double beta = 0.0;
  double mean_work = 0.0;          // ⟨Δa⟩ / β
  double delta_free_energy = 0.0;  // −ln(Z_τ/Z₀) / β
  double mean_exp_work = 0.0;      // ⟨e^{−βW}⟩
  double z_initial = 0.0;
  double z_final = 0.0;
  double partition_ratio = 0.0;    // Z_τ/Z₀
  FtReport ft;
  std::vector<Check> checks;

  bool passed() const { return all_passed(checks); }
};

struct JarzynskiScenario {
  TwoTimeProtocol protocol;
  JarzynskiReport report;
};

struct JarzynskiTolerances {
  double identity = 1e-8;  // relative to max(1, Z_τ/Z₀)
  double work_bound = 1e-8;
};

/// Gibbs initial state of H0, energy measurements A^i = βH0 and
/// A^f = βH(τ), unitary evolution along the protocol.
JarzynskiScenario jarzynski_scenario(const HermitianOperator& h0, const channel::EvolutionProtocol& protocol, double beta,
                                     const JarzynskiTolerances& jtol = {}, const Tolerances& tol = {});

}  // namespace holevoft::ttm
