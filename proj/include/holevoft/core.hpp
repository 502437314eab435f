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

// Complex Hermitian linear algebra with an explicit tolerance policy.
//
// Every operator type here is an immutable value validated at construction.
// Matrix functions of positive semidefinite operators act only on the
// support (eigenvalues above the relative rank cutoff); the kernel receives
// an explicit convention value. Exponentials of operators that are formally
// -infinity on a subspace are realized by compression onto the complement.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "holevoft/errors.hpp"
#include "holevoft/tolerances.hpp"

namespace holevoft {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Largest absolute entry.
double max_abs(const ComplexMatrix& m);

/// Max-norm asymmetry ‖M − M†‖_max.
double hermiticity_defect(const ComplexMatrix& m);

class HermitianOperator {
 public:
  /// Rejects non-square, non-finite or non-Hermitian input (asymmetry is
  /// measured relative to max(1, ‖M‖_max)). Stores the symmetrized matrix.
  explicit HermitianOperator(const ComplexMatrix& m, const Tolerances& tol = {});

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

/// Positive semidefinite, unit-trace Hermitian operator. The stored matrix is
/// renormalized to exact unit trace after validation.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m, const Tolerances& tol = {});

  static DensityMatrix pure(const ComplexVector& psi, const Tolerances& tol = {});
  static DensityMatrix maximally_mixed(Index dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  HermitianOperator as_hermitian() const { return HermitianOperator(m_); }

 private:
  struct Trusted {};
  DensityMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Orthogonal projector; keeps an orthonormal basis of its range.
class Projector {
 public:
  /// Validates P² = P, P = P† within proj_tol and trace(P) ≈ rank.
  static Projector from_matrix(const ComplexMatrix& p, const Tolerances& tol = {});
  /// P = B B† for a matrix B with orthonormal columns (not re-validated).
  static Projector onto(const ComplexMatrix& orthonormal_columns);
  static Projector zero(Index dim);
  static Projector identity(Index dim);

  const ComplexMatrix& matrix() const noexcept { return p_; }
  const ComplexMatrix& basis() const noexcept { return basis_; }
  Index rank() const noexcept { return basis_.cols(); }
  Index dim() const noexcept { return p_.rows(); }

  /// Projector onto the orthogonal complement.
  Projector complement() const;

 private:
  Projector(ComplexMatrix p, ComplexMatrix basis) : p_(std::move(p)), basis_(std::move(basis)) {}
  ComplexMatrix p_;
  ComplexMatrix basis_;
};

struct SpectralDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // columns

  /// V f(Λ) V†.
  ComplexMatrix apply(const std::function<Complex(double)>& f) const;
  ComplexMatrix reconstruct() const;
};

struct Eigenspace {
  double value;
  Projector projector;
};

SpectralDecomposition spectral_decompose(const HermitianOperator& h, const Tolerances& tol = {});

/// Clusters ascending eigenvalues greedily: a new cluster starts whenever the
/// gap to the previous eigenvalue exceeds degeneracy_tol. The cluster value is
/// the mean of its members.
std::vector<Eigenspace> group_eigenspaces(const SpectralDecomposition& dec, double degeneracy_tol);

/// Threshold above which an eigenvalue counts as support: rank_tol·λ_max, or
/// +infinity (empty support) when λ_max ≤ rank_tol.
double support_cutoff(const RealVector& ascending_eigenvalues, double rank_tol);

Projector support_projector(const HermitianOperator& a, const Tolerances& tol = {});

/// Applies f to the eigenvalues on the support of the PSD operator `a` and
/// assigns `off_support_value` on the kernel. Throws InputError when f is
/// non-finite on an in-support eigenvalue.
HermitianOperator func_on_support(const HermitianOperator& a, const std::function<double(double)>& f,
                                  double off_support_value, const Tolerances& tol = {});

/// exp of the Hermitian operator that equals F on range(I − N) and −∞ on
/// range(N): Q exp(Q F Q|range Q) Q with Q = I − N.
HermitianOperator compressed_exp(const HermitianOperator& f, const Projector& suppressed);

/// Spectral exp(H).
ComplexMatrix hermitian_exp(const HermitianOperator& h);

/// exp(−i H t), unitary.
ComplexMatrix unitary_evolution(const HermitianOperator& h, double t);

/// Kronecker product A ⊗ B. Composite spaces use the ordering
/// encoding ⊗ probe ⊗ message.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace keeping the subsystems listed in `keep` (any order; the
/// result keeps them in ascending subsystem order).
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const Index> dims, std::span<const Index> keep);

/// |i⟩⟨i| on a `dim`-dimensional space.
ComplexMatrix basis_projector(Index dim, Index i);

}  // namespace holevoft
