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

#include "holevoft/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "holevoft/random.hpp"

namespace holevoft::measurement {

namespace {

void check_complete_orthogonal(const std::vector<Projector>& ps, const Tolerances& tol, const char* what) {
  if (ps.empty()) throw InputError(std::string(what) + ": no projectors");
  const Index n = ps.front().dim();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& p : ps) {
    if (p.dim() != n) throw InputError(std::string(what) + ": projector dimensions differ");
    sum += p.matrix();
  }
  const double completeness = max_abs(sum - ComplexMatrix::Identity(n, n));
  if (completeness > tol.proj) {
    std::ostringstream os;
    os << what << ": projectors do not sum to identity (max deviation " << completeness << ")";
    throw InputError(os.str());
  }
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t b = a + 1; b < ps.size(); ++b) {
      const double overlap = max_abs(ps[a].matrix() * ps[b].matrix());
      if (overlap > tol.proj) {
        std::ostringstream os;
        os << what << ": projectors " << a << " and " << b << " are not orthogonal (max |P_a P_b| = " << overlap << ")";
        throw InputError(os.str());
      }
    }
}

void require_dims(Index a, Index b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw InputError(os.str());
  }
}

}  // namespace

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<Projector> projectors, const Tolerances& tol)
    : projectors_(std::move(projectors)) {
  check_complete_orthogonal(projectors_, tol, "projective measurement");
}

bool Branch::is_infinite() const noexcept {
  return std::isinf(value);
}

ExtendedObservable::ExtendedObservable(std::vector<Branch> branches, const Tolerances& tol)
    : branches_(std::move(branches)) {
  std::vector<Projector> ps;
  std::vector<double> finite;
  int infinite = 0;
  for (const auto& b : branches_) {
    if (std::isnan(b.value) || b.value == -std::numeric_limits<double>::infinity())
      throw InputError("observable branch value must be finite or +infinity");
    if (b.is_infinite())
      ++infinite;
    else
      finite.push_back(b.value);
    ps.push_back(b.projector);
  }
  if (infinite > 1) throw InputError("observable has more than one +infinity branch");
  check_complete_orthogonal(ps, tol, "observable");
  std::sort(finite.begin(), finite.end());
  for (std::size_t i = 1; i < finite.size(); ++i)
    if (finite[i] - finite[i - 1] <= tol.degeneracy) {
      std::ostringstream os;
      os << "observable branch values " << finite[i - 1] << " and " << finite[i] << " are not distinct";
      throw InputError(os.str());
    }
}

bool ExtendedObservable::has_infinite_branch() const noexcept {
  return std::any_of(branches_.begin(), branches_.end(), [](const Branch& b) { return b.is_infinite(); });
}

Projector ExtendedObservable::infinite_projector() const {
  for (const auto& b : branches_)
    if (b.is_infinite()) return b.projector;
  return Projector::zero(dim());
}

ComplexMatrix ExtendedObservable::apply_finite(const std::function<double(double)>& f) const {
  ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
  for (const auto& b : branches_)
    if (!b.is_infinite()) out += f(b.value) * b.projector.matrix();
  return out;
}

ComplexMatrix ExtendedObservable::finite_part() const {
  return apply_finite([](double a) { return a; });
}

ProjectiveMeasurement ExtendedObservable::as_measurement(const Tolerances& tol) const {
  std::vector<Projector> ps;
  ps.reserve(branches_.size());
  for (const auto& b : branches_) ps.push_back(b.projector);
  return ProjectiveMeasurement(std::move(ps), tol);
}

ExtendedObservable observable_from_hermitian(const HermitianOperator& h, const Tolerances& tol) {
  std::vector<Branch> branches;
  for (auto& e : group_eigenspaces(spectral_decompose(h, tol), tol.degeneracy))
    branches.push_back({e.value, std::move(e.projector)});
  return ExtendedObservable(std::move(branches), tol);
}

ExtendedObservable observable_from_compression(const HermitianOperator& finite_form, const Projector& infinite_subspace,
                                               const Tolerances& tol) {
  require_dims(finite_form.dim(), infinite_subspace.dim(), "observable_from_compression");
  const Index n = finite_form.dim();
  std::vector<Branch> branches;
  if (infinite_subspace.rank() < n) {
    const ComplexMatrix b = infinite_subspace.complement().basis();
    const ComplexMatrix c = b.adjoint() * finite_form.matrix() * b;
    const SpectralDecomposition dec = spectral_decompose(HermitianOperator((c + c.adjoint()) / 2.0, tol), tol);
    for (const auto& e : group_eigenspaces(dec, tol.degeneracy))
      branches.push_back({e.value, Projector::onto(b * e.projector.basis())});
  }
  if (infinite_subspace.rank() > 0)
    branches.push_back({std::numeric_limits<double>::infinity(), infinite_subspace});
  return ExtendedObservable(std::move(branches), tol);
}

std::vector<Outcome> measure(const DensityMatrix& rho, const ProjectiveMeasurement& m, const Tolerances& tol) {
  require_dims(rho.dim(), m.dim(), "measure");
  std::vector<Outcome> out;
  out.reserve(m.size());
  double total = 0.0;
  for (const auto& p : m.projectors()) {
    const ComplexMatrix block = p.matrix() * rho.matrix() * p.matrix();
    const double prob = std::max(0.0, block.trace().real());
    total += prob;
    if (prob > tol.prob_floor)
      out.push_back({prob, DensityMatrix(block / prob, tol)});
    else
      out.push_back({prob, std::nullopt});
  }
  if (std::abs(total - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "measurement probabilities sum to " << total;
    throw ConsistencyError(os.str(), total, 1.0);
  }
  return out;
}

ComplexMatrix measurement_channel(const ComplexMatrix& x, const ProjectiveMeasurement& m) {
  require_dims(x.rows(), m.dim(), "measurement_channel");
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const auto& p : m.projectors()) out += p.matrix() * x * p.matrix();
  return out;
}

DensityMatrix measurement_channel(const DensityMatrix& rho, const ProjectiveMeasurement& m, const Tolerances& tol) {
  return DensityMatrix(measurement_channel(rho.matrix(), m), tol);
}

Povm::Povm(const std::vector<ComplexMatrix>& elements, const Tolerances& tol) {
  if (elements.empty()) throw InputError("POVM has no elements");
  const Index n = elements.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    HermitianOperator h(elements[k], tol);
    if (h.dim() != n) throw InputError("POVM element dimensions differ");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol.psd) {
      std::ostringstream os;
      os << "POVM element " << k << " is not positive semidefinite (min eigenvalue " << min_eig << ")";
      throw InputError(os.str());
    }
    sum += h.matrix();
    elements_.push_back(std::move(h));
  }
  const double completeness = max_abs(sum - ComplexMatrix::Identity(n, n));
  if (completeness > tol.proj) {
    std::ostringstream os;
    os << "POVM completeness violated: max |sum_k M_k - I| = " << completeness;
    throw InputError(os.str());
  }
}

ComplexMatrix psd_sqrt(const HermitianOperator& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.matrix());
  const RealVector s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix NaimarkDilation::probe_state() const {
  return basis_projector(probe_dim, probe_state_index);
}

namespace {

// Columns of V: V|i⟩ = Σ_k (√M_k |i⟩) ⊗ |k⟩.
ComplexMatrix square_root_isometry(const Povm& povm) {
  const Index d = povm.dim();
  const Index k_count = static_cast<Index>(povm.size());
  ComplexMatrix v = ComplexMatrix::Zero(d * k_count, d);
  for (Index k = 0; k < k_count; ++k) {
    const ComplexMatrix s = psd_sqrt(povm.elements()[static_cast<std::size_t>(k)]);
    for (Index a = 0; a < d; ++a)
      for (Index i = 0; i < d; ++i) v(a * k_count + k, i) = s(a, i);
  }
  return v;
}

// Extends the orthonormal columns of `q` to a full basis, choosing at each
// step the candidate column with the largest residual (ties: lowest index).
ComplexMatrix complete_basis(const ComplexMatrix& q, const ComplexMatrix& candidates, const Tolerances& tol) {
  const Index n = q.rows();
  ComplexMatrix basis(n, n);
  basis.leftCols(q.cols()) = q;
  Index filled = q.cols();
  std::vector<bool> used(static_cast<std::size_t>(candidates.cols()), false);
  while (filled < n) {
    const auto current = basis.leftCols(filled);
    double best_norm = -1.0;
    Index best = -1;
    ComplexVector best_residual;
    for (Index c = 0; c < candidates.cols(); ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      ComplexVector r = candidates.col(c) - current * (current.adjoint() * candidates.col(c));
      const double nr = r.norm();
      if (nr > best_norm) {
        best_norm = nr;
        best = c;
        best_residual = std::move(r);
      }
    }
    if (best < 0 || !(best_norm > tol.rank)) {
      std::ostringstream os;
      os << "Naimark completion failed: " << filled << " of " << n
         << " orthonormal columns found, largest candidate residual " << best_norm;
      throw InputError(os.str());
    }
    used[static_cast<std::size_t>(best)] = true;
    ComplexVector u = best_residual / best_norm;
    u -= current * (current.adjoint() * u);  // second Gram-Schmidt pass
    basis.col(filled++) = u.normalized();
  }
  return basis;
}

NaimarkDilation dilate_with(const Povm& povm, const ComplexMatrix& candidates, const Tolerances& tol) {
  const Index d = povm.dim();
  const Index k_count = static_cast<Index>(povm.size());
  const Index n = d * k_count;
  const ComplexMatrix v = square_root_isometry(povm);
  const double iso = max_abs(v.adjoint() * v - ComplexMatrix::Identity(d, d));
  if (iso > tol.proj) {
    std::ostringstream os;
    os << "square-root map is not an isometry (max |V^dagger V - I| = " << iso << ")";
    throw InputError(os.str());
  }
  const ComplexMatrix full = complete_basis(v, candidates, tol);

  // Column (i, 0) of U is V|i⟩; remaining columns take the completion in order.
  ComplexMatrix u(n, n);
  Index next = d;
  for (Index i = 0; i < d; ++i)
    for (Index p = 0; p < k_count; ++p) u.col(i * k_count + p) = p == 0 ? full.col(i) : full.col(next++);

  NaimarkDilation dil;
  dil.system_dim = d;
  dil.probe_dim = k_count;
  dil.probe_state_index = 0;
  dil.embedding_unitary = u;
  for (Index k = 0; k < k_count; ++k) {
    ComplexMatrix b(n, d);
    for (Index a = 0; a < d; ++a) b.col(a) = u.row(a * k_count + k).adjoint();
    dil.projectors.push_back(Projector::onto(b));
  }
  const auto reduced = reduced_elements(dil);
  for (Index k = 0; k < k_count; ++k) {
    const double err = max_abs(reduced[static_cast<std::size_t>(k)] - povm.elements()[static_cast<std::size_t>(k)].matrix());
    if (err > 1e-10) {
      std::ostringstream os;
      os << "dilation does not reproduce POVM element " << k << " (max deviation " << err << ")";
      throw ConsistencyError(os.str(), err, 1e-10);
    }
  }
  return dil;
}

}  // namespace

NaimarkDilation naimark_dilate(const Povm& povm, const Tolerances& tol) {
  const Index n = povm.dim() * static_cast<Index>(povm.size());
  return dilate_with(povm, ComplexMatrix::Identity(n, n), tol);
}

NaimarkDilation naimark_dilate_randomized(const Povm& povm, std::uint64_t seed, const Tolerances& tol) {
  const Index n = povm.dim() * static_cast<Index>(povm.size());
  auto rng = random::make_engine(seed);
  return dilate_with(povm, random::ginibre(n, n, rng), tol);
}

std::vector<ComplexMatrix> reduced_elements(const NaimarkDilation& dil) {
  const Index d = dil.system_dim;
  const Index kc = dil.probe_dim;
  const Index z = dil.probe_state_index;
  std::vector<ComplexMatrix> out;
  for (const auto& p : dil.projectors) {
    ComplexMatrix m(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) m(i, j) = p.matrix()(i * kc + z, j * kc + z);
    out.push_back(std::move(m));
  }
  return out;
}

RealVector povm_probabilities(const DensityMatrix& rho, const Povm& povm, const Tolerances& tol) {
  require_dims(rho.dim(), povm.dim(), "povm_probabilities");
  RealVector p(static_cast<Index>(povm.size()));
  for (std::size_t k = 0; k < povm.size(); ++k)
    p(static_cast<Index>(k)) = std::max(0.0, (rho.matrix() * povm.elements()[k].matrix()).trace().real());
  const double total = p.sum();
  if (std::abs(total - 1.0) > 1e-10 + tol.prob_floor * static_cast<double>(povm.size())) {
    std::ostringstream os;
    os << "POVM probabilities sum to " << total;
    throw ConsistencyError(os.str(), total, 1.0);
  }
  return p;
}

RealVector dilated_probabilities(const DensityMatrix& rho, const NaimarkDilation& dil) {
  require_dims(rho.dim(), dil.system_dim, "dilated_probabilities");
  const ComplexMatrix joint = kron(rho.matrix(), dil.probe_state());
  RealVector p(static_cast<Index>(dil.projectors.size()));
  for (std::size_t k = 0; k < dil.projectors.size(); ++k)
    p(static_cast<Index>(k)) = (joint * dil.projectors[k].matrix()).trace().real();
  return p;
}

}  // namespace holevoft::measurement
