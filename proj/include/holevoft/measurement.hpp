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

// Projective measurements with back-action, observables whose spectrum may
// contain +infinity, POVMs, and their orthogonal realization on
// system ⊗ probe.

#include <cstdint>
#include <optional>
#include <vector>

#include "holevoft/core.hpp"

namespace holevoft::measurement {

class ProjectiveMeasurement {
 public:
  /// Rejects projectors that are not mutually orthogonal or do not sum to
  /// the identity within proj_tol.
  explicit ProjectiveMeasurement(std::vector<Projector> projectors, const Tolerances& tol = {});

  const std::vector<Projector>& projectors() const noexcept { return projectors_; }
  std::size_t size() const noexcept { return projectors_.size(); }
  Index dim() const noexcept { return projectors_.front().dim(); }

 private:
  std::vector<Projector> projectors_;
};

struct Branch {
  double value;  // finite, or +infinity
  Projector projector;

  bool is_infinite() const noexcept;
};

/// A = Σ a_m Π_m where at most one a_m is +infinity. exp(−A) is bounded and
/// vanishes on the infinite branch.
class ExtendedObservable {
 public:
  explicit ExtendedObservable(std::vector<Branch> branches, const Tolerances& tol = {});

  const std::vector<Branch>& branches() const noexcept { return branches_; }
  Index dim() const noexcept { return branches_.front().projector.dim(); }
  bool has_infinite_branch() const noexcept;

  /// Projector of the infinite branch (zero projector when absent).
  Projector infinite_projector() const;

  /// Σ over finite branches of a_m Π_m (zero on the infinite branch).
  ComplexMatrix finite_part() const;

  /// Σ_m f(a_m) Π_m over finite branches.
  ComplexMatrix apply_finite(const std::function<double(double)>& f) const;

  ProjectiveMeasurement as_measurement(const Tolerances& tol = {}) const;

 private:
  std::vector<Branch> branches_;
};

/// Branches are the grouped eigenspaces of H; no infinite branch.
ExtendedObservable observable_from_hermitian(const HermitianOperator& h, const Tolerances& tol = {});

/// Observable equal to `finite_form` compressed to range(I − N) and +infinity
/// on range(N). Finite branches come from the eigenspaces of the compression.
ExtendedObservable observable_from_compression(const HermitianOperator& finite_form, const Projector& infinite_subspace,
                                               const Tolerances& tol = {});

struct Outcome {
  double probability;
  std::optional<DensityMatrix> post_state;  // absent when probability ≤ prob_floor
};

std::vector<Outcome> measure(const DensityMatrix& rho, const ProjectiveMeasurement& m, const Tolerances& tol = {});

/// Non-selective back-action Σ_m Π_m X Π_m on an arbitrary operator.
ComplexMatrix measurement_channel(const ComplexMatrix& x, const ProjectiveMeasurement& m);

DensityMatrix measurement_channel(const DensityMatrix& rho, const ProjectiveMeasurement& m, const Tolerances& tol = {});

class Povm {
 public:
  /// Rejects elements that are not PSD within psd_tol or do not sum to the
  /// identity within proj_tol.
  explicit Povm(const std::vector<ComplexMatrix>& elements, const Tolerances& tol = {});

  const std::vector<HermitianOperator>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  Index dim() const noexcept { return elements_.front().dim(); }

 private:
  std::vector<HermitianOperator> elements_;
};

/// Orthogonal measurement {Π_k} on system ⊗ probe with ⟨0|Π_k|0⟩ = M_k.
struct NaimarkDilation {
  Index system_dim = 0;
  Index probe_dim = 0;
  Index probe_state_index = 0;
  std::vector<Projector> projectors;
  /// U with U(|ψ⟩ ⊗ |0⟩) = Σ_k √M_k|ψ⟩ ⊗ |k⟩ and Π_k = U†(I ⊗ |k⟩⟨k|)U.
  ComplexMatrix embedding_unitary;

  /// |0⟩⟨0| on the probe.
  ComplexMatrix probe_state() const;
};

/// Square-root isometry completed to a unitary with a deterministic
/// orthonormal completion drawn from the canonical basis.
NaimarkDilation naimark_dilate(const Povm& povm, const Tolerances& tol = {});

/// Same isometry, completed with a random orthonormal complement. Any such
/// completion is a valid dilation of the same POVM.
NaimarkDilation naimark_dilate_randomized(const Povm& povm, std::uint64_t seed, const Tolerances& tol = {});

/// trace(ρ M_k), negative rounding noise clipped to zero.
RealVector povm_probabilities(const DensityMatrix& rho, const Povm& povm, const Tolerances& tol = {});

/// trace((ρ ⊗ |0⟩⟨0|) Π_k) on the dilated space.
RealVector dilated_probabilities(const DensityMatrix& rho, const NaimarkDilation& dil);

/// ⟨0|Π_k|0⟩ for every k: the POVM realized by the dilation.
std::vector<ComplexMatrix> reduced_elements(const NaimarkDilation& dil);

/// PSD square root with negative eigenvalues clipped to zero.
ComplexMatrix psd_sqrt(const HermitianOperator& m);

}  // namespace holevoft::measurement
