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

// Trace-preserving completely positive maps in Kraus form.

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "holevoft/core.hpp"

namespace holevoft::channel {

/// Square (dimension-preserving) Kraus channel X ↦ Σ_k K_k X K_k†.
class KrausChannel {
 public:
  /// Rejects empty lists, mismatched shapes and Σ K†K ≠ I beyond trace_tol.
  explicit KrausChannel(std::vector<ComplexMatrix> ops, const Tolerances& tol = {});

  static KrausChannel identity(Index dim);

  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
  Index dim() const noexcept { return ops_.front().rows(); }

 private:
  std::vector<ComplexMatrix> ops_;
};

using LinearMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

struct TcpReport {
  double completeness_violation = 0.0;  // ‖Σ K†K − I‖_max, or trace-preservation defect
  double min_choi_eigenvalue = 0.0;
  bool trace_preserving = false;
  bool completely_positive = false;

  bool valid() const noexcept { return trace_preserving && completely_positive; }
};

/// Report-style check of a purported Kraus list (not required to be valid).
TcpReport validate_tcp(const std::vector<ComplexMatrix>& kraus, const Tolerances& tol = {});

/// Same checks for a map given by its action. Trace preservation is tested
/// as tr E(|i⟩⟨j|) = δ_ij; complete positivity through the Choi matrix
/// Σ_ij |i⟩⟨j| ⊗ E(|i⟩⟨j|).
TcpReport validate_tcp(const LinearMap& map, Index dim, const Tolerances& tol = {});

ComplexMatrix choi_matrix(const LinearMap& map, Index dim);

DensityMatrix apply(const KrausChannel& c, const DensityMatrix& rho, const Tolerances& tol = {});

/// Linear extension to arbitrary operators.
ComplexMatrix apply(const KrausChannel& c, const ComplexMatrix& x);

struct ProtocolStep {
  HermitianOperator hamiltonian;
  double duration;
};

/// Piecewise-constant Hamiltonian protocol; the last step's Hamiltonian is
/// H(τ).
class EvolutionProtocol {
 public:
  explicit EvolutionProtocol(std::vector<ProtocolStep> steps);

  const std::vector<ProtocolStep>& steps() const noexcept { return steps_; }
  Index dim() const noexcept { return steps_.front().hamiltonian.dim(); }
  const HermitianOperator& final_hamiltonian() const noexcept { return steps_.back().hamiltonian; }

 private:
  std::vector<ProtocolStep> steps_;
};

/// U = exp(−i H_n t_n) ··· exp(−i H_1 t_1).
ComplexMatrix protocol_unitary(const EvolutionProtocol& p);

KrausChannel unitary_from_protocol(const EvolutionProtocol& p, const Tolerances& tol = {});

enum class StandardKind { identity, depolarizing, dephasing, bit_flip, amplitude_damping };

std::string_view to_string(StandardKind kind);
std::optional<StandardKind> parse_standard_kind(std::string_view name);

/// Standard channels on `dim` levels with strength q ∈ [0, 1]:
///   depolarizing       ρ ↦ (1−q)ρ + q I/d   (Weyl-operator Kraus form)
///   dephasing          ρ ↦ (1−q)ρ + q diag(ρ)
///   bit_flip           {√(1−q) I, √q X}, X the cyclic shift
///   amplitude_damping  every excited level decays to |0⟩ with probability q
KrausChannel standard_channel(StandardKind kind, Index dim, double q, const Tolerances& tol = {});

}  // namespace holevoft::channel
