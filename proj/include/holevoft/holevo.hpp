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

// Classical-quantum channel analysis through the two-time fluctuation
// theorem. Alice sends word j with prior π_j encoded in ρ_j; Bob measures a
// POVM {M_k}. The composite construction on encoding ⊗ probe ⊗ message
//
//   ρ₀  = Σ_j π_j ρ_j ⊗ |0⟩⟨0| ⊗ |j⟩⟨j|
//   A^i = Σ_j ln(ρ̂_j⁻¹) ⊗ |0⟩⟨0| ⊗ |j⟩⟨j|
//   A^f = −ln(ρ̄ ⊗ |0⟩⟨0|) ⊗ I − Σ_{k,j} ln(π_{k|j}/π_k) Π_k ⊗ |j⟩⟨j|
//
// measured back to back (identity channel) gives ⟨Δa⟩ = χ − I and the
// sharpened bound χ − I ≥ −ln γ ≥ 0.

#include <cstdint>
#include <span>
#include <vector>

#include "holevoft/check.hpp"
#include "holevoft/core.hpp"
#include "holevoft/measurement.hpp"
#include "holevoft/ttm.hpp"

namespace holevoft::holevo {

using measurement::ExtendedObservable;
using measurement::NaimarkDilation;
using measurement::Povm;

class Ensemble {
 public:
  /// Priors must be non-negative and sum to one within 1e−12; words with
  /// prior ≤ prob_floor are dropped and the rest renormalized.
  Ensemble(std::vector<double> priors, std::vector<DensityMatrix> states, const Tolerances& tol = {});

  const std::vector<double>& priors() const noexcept { return priors_; }
  const std::vector<DensityMatrix>& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return priors_.size(); }
  Index dim() const noexcept { return states_.front().dim(); }

  /// ρ̄ = Σ_j π_j ρ_j.
  DensityMatrix average_state() const;

 private:
  std::vector<double> priors_;
  std::vector<DensityMatrix> states_;
};

class CqChannelInstance {
 public:
  CqChannelInstance(Ensemble ensemble, Povm povm);

  const Ensemble& ensemble() const noexcept { return ensemble_; }
  const Povm& povm() const noexcept { return povm_; }

 private:
  Ensemble ensemble_;
  Povm povm_;
};

/// π_{k|j} = tr(ρ_j M_k), rows indexed by word j.
Eigen::MatrixXd conditional_probabilities(const CqChannelInstance& inst, const Tolerances& tol = {});

/// π_k = Σ_j π_j π_{k|j}.
RealVector outcome_marginal(const Eigen::MatrixXd& conditional, std::span<const double> priors);

/// I = Σ_{jk} π_j π_{k|j} ln(π_{k|j}/π_k) over terms with π_j π_{k|j} > floor.
double mutual_information(const Eigen::MatrixXd& conditional, std::span<const double> priors, double prob_floor);
double mutual_information(const CqChannelInstance& inst, const Tolerances& tol = {});

/// I = S({π_j}) + Σ_k π_k Σ_j π_{j|k} ln π_{j|k}.
struct InformationDecomposition {
  double shannon;
  double conditional;
};
InformationDecomposition mutual_information_decomposition(const CqChannelInstance& inst, const Tolerances& tol = {});

double shannon_entropy(std::span<const double> p);
double von_neumann_entropy(const DensityMatrix& rho);

/// χ = S(ρ̄) − Σ_j π_j S(ρ_j).
double holevo_chi(const Ensemble& e);

DensityMatrix build_joint_state(const Ensemble& e, const NaimarkDilation& dil, const Tolerances& tol = {});

/// Everything the composite construction produces, kept for the diagnostics.
struct CompositeConstruction {
  Index encoding_dim = 0;
  Index probe_dim = 0;
  Index message_dim = 0;
  std::vector<double> priors;
  Eigen::MatrixXd conditional;  // π_{k|j} via the dilation, J × K
  RealVector marginal;          // π_k
  Eigen::MatrixXd log_ratio;    // I_{k,j} stored J × K, NaN where not retained
  std::vector<std::vector<bool>> retained;  // [j][k]: π_{k|j} > prob_floor
  std::vector<Projector> outcome_projectors;  // Π_k on encoding ⊗ probe
  ComplexMatrix average_with_probe;           // ρ̄ ⊗ |0⟩⟨0|
  ComplexMatrix log_average_with_probe;       // ln(ρ̄ ⊗ |0⟩⟨0|) on its support, 0 elsewhere
  std::vector<Projector> block_suppression;   // per word: where A^f = +∞ on encoding ⊗ probe
  ComplexMatrix joint_state;                  // ρ₀
  ComplexMatrix initial_form;                 // A^i
  ComplexMatrix final_form;                   // finite Hermitian form of A^f before compression
  Projector final_suppression = Projector::zero(1);
};

CompositeConstruction build_construction(const Ensemble& e, const NaimarkDilation& dil, const Tolerances& tol = {});

struct ObservablePair {
  ExtendedObservable initial;
  ExtendedObservable final;
};

/// Throws InputError when some π_k ≈ 0 while π_{k|j} > prob_floor for a word,
/// or when a state's support leaves supp(ρ̄).
ObservablePair build_observables(const Ensemble& e, const NaimarkDilation& dil, const Tolerances& tol = {});
ObservablePair build_observables(const CompositeConstruction& c, const Tolerances& tol = {});

struct GtChain {
  double gamma = 0.0;
  double g1 = 0.0;  // Σ_j π_j tr exp(ln(ρ̄⊗|0⟩⟨0|) + Σ_k I_{k,j} Π_k)
  double g2 = 0.0;  // Σ_j π_j tr((ρ̄⊗|0⟩⟨0|) Σ_k (π_{k|j}/π_k) Π_k), equal to 1
  std::vector<Check> checks;
};

GtChain gt_chain(const CompositeConstruction& c, double gamma, const Tolerances& tol = {});

/// max_j ‖P̂_j R_j P̂_j‖_max with
/// R_j = ln ρ_j − P̂_j ln ρ̄ P̂_j − Σ_k I_{k,j} P̂_j M_k P̂_j + ln(γ) P̂_j.
/// Outcomes with π_{k|j} ≤ prob_floor are skipped after asserting
/// ‖M_k P̂_j‖_max ≤ 1e−8 (ConsistencyError otherwise).
double equality_residual(const CqChannelInstance& inst, double gamma, const Tolerances& tol = {});

struct HolevoReport {
  double mutual_information = 0.0;
  double chi = 0.0;
  double shannon = 0.0;
  double conditional_term = 0.0;
  double gamma = 0.0;               // trace route
  double gamma_distribution = 0.0;  // ⟨e^{−Δa}⟩
  double gamma_efficacy = 0.0;      // ttm trace formula on the recovered branches
  double neg_log_gamma = 0.0;
  double mean_delta_a = 0.0;        // from the Δa distribution
  double mean_delta_a_trace = 0.0;  // tr(ρ₀(A^f − A^i))
  GtChain chain;
  double equality_residual = 0.0;
  double bound_slack = 0.0;  // (χ − I) − (−ln γ)
  double max_infinite_probability = 0.0;
  Eigen::MatrixXd conditional;
  RealVector marginal;
  ttm::DeltaDistribution delta;
  std::vector<Check> checks;

  bool passed() const { return all_passed(checks); }
};

/// Full analysis with the canonical dilation. Throws ConsistencyError when the
/// distribution and trace routes for γ disagree beyond 1e−8; every other
/// assertion is recorded in `checks`.
HolevoReport analyze(const CqChannelInstance& inst, const Tolerances& tol = {});
HolevoReport analyze_with_dilation(const CqChannelInstance& inst, const NaimarkDilation& dil, const Tolerances& tol = {});

/// −ln γ for the canonical dilation against randomized completions of the
/// same isometry.
struct DilationComparison {
  double canonical_neg_log_gamma = 0.0;
  double max_abs_difference = 0.0;
  int trials = 0;
};
DilationComparison compare_dilations(const CqChannelInstance& inst, int randomized_trials, std::uint64_t seed,
                                     const Tolerances& tol = {});

enum class StateKind { full_rank, pure, rank_deficient };

/// Dirichlet priors, Wishart-style states of the requested kind and a POVM
/// M_k = T^{-1/2} B_k†B_k T^{-1/2}; deterministic in `seed`.
CqChannelInstance random_instance(Index dim, Index words, Index outcomes, std::uint64_t seed,
                                  StateKind kind = StateKind::full_rank);

}  // namespace holevoft::holevo
