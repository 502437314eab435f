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

// Seeded random operators. Every generator draws only from the engine it is
// given, so a fixed seed reproduces the same objects.

#include <cstdint>
#include <random>
#include <vector>

#include "holevoft/core.hpp"

namespace holevoft::random {

using Engine = std::mt19937_64;

/// Engine for sub-task `index` of a run seeded with `seed`. Distinct
/// (seed, index) pairs give independent streams, independent of the order in
/// which sub-tasks are executed.
Engine make_engine(std::uint64_t seed, std::uint64_t index = 0);

/// Matrix with i.i.d. standard complex Gaussian entries (E|z|² = 1).
ComplexMatrix ginibre(Index rows, Index cols, Engine& rng);

/// (G + G†)/2 scaled by `scale`.
HermitianOperator random_hermitian(Index dim, Engine& rng, double scale = 1.0);

/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(Index dim, Engine& rng);

/// G G† / tr with G of shape dim × rank.
DensityMatrix random_density(Index dim, Index rank, Engine& rng);

DensityMatrix random_pure_state(Index dim, Engine& rng);

/// Symmetric Dirichlet(1) draw of length n.
std::vector<double> random_simplex(Index n, Engine& rng);

/// Hermitian operator with eigenvalues drawn from `levels` (with repetition,
/// giving degenerate spectra) in a Haar-random basis.
HermitianOperator random_degenerate_hermitian(Index dim, const std::vector<double>& levels, Engine& rng);

/// M_k = T^{-1/2} B_k† B_k T^{-1/2}, T = Σ_k B_k† B_k, B_k Ginibre. Returns the
/// raw element matrices.
std::vector<ComplexMatrix> random_povm_elements(Index dim, Index outcomes, Engine& rng);

/// Same construction from caller-provided B_k.
std::vector<ComplexMatrix> povm_from_factors(const std::vector<ComplexMatrix>& factors);

}  // namespace holevoft::random
