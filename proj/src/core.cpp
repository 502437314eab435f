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

#include "holevoft/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace holevoft {

void Tolerances::validate() const {
  const double fields[] = {hermiticity, psd, trace, degeneracy, rank, proj, ortho, recon, prob_floor};
  for (double v : fields) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("tolerances must be strictly positive and finite");
  }
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

namespace {

void require_square_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw InputError(os.str());
  }
  if (!m.allFinite()) throw InputError(std::string(what) + ": non-finite entry");
}

ComplexMatrix symmetrize(const ComplexMatrix& m) {
  return (m + m.adjoint()) / 2.0;
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> eigensolve(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) throw ConsistencyError("Hermitian eigensolver failed to converge");
  return es;
}

}  // namespace

HermitianOperator::HermitianOperator(const ComplexMatrix& m, const Tolerances& tol) {
  require_square_finite(m, "Hermitian operator");
  const double defect = hermiticity_defect(m);
  if (defect > tol.hermiticity * std::max(1.0, max_abs(m))) {
    std::ostringstream os;
    os << "operator is not Hermitian: max |H - H^dagger| = " << defect;
    throw InputError(os.str());
  }
  m_ = symmetrize(m);
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m, const Tolerances& tol) {
  HermitianOperator h(m, tol);
  const double tr = h.matrix().trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "density matrix trace is " << tr << ", expected 1";
    throw InputError(os.str());
  }
  const double min_eig = eigensolve(h.matrix()).eigenvalues().minCoeff();
  if (min_eig < -tol.psd) {
    std::ostringstream os;
    os << "density matrix is not positive semidefinite: min eigenvalue " << min_eig;
    throw InputError(os.str());
  }
  m_ = h.matrix() / tr;
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi, const Tolerances& tol) {
  const double n = psi.norm();
  if (!(n > 0.0) || !psi.allFinite()) throw InputError("pure state vector must be finite and non-zero");
  ComplexVector v = psi / n;
  return DensityMatrix(v * v.adjoint(), tol);
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim <= 0) throw InputError("dimension must be positive");
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  return DensityMatrix(std::move(m), Trusted{});
}

Projector Projector::from_matrix(const ComplexMatrix& p, const Tolerances& tol) {
  require_square_finite(p, "projector");
  const double herm = hermiticity_defect(p);
  const double idem = max_abs(p * p - p);
  if (herm > tol.proj || idem > tol.proj) {
    std::ostringstream os;
    os << "matrix is not an orthogonal projector: max |P - P^dagger| = " << herm
       << ", max |P^2 - P| = " << idem;
    throw InputError(os.str());
  }
  const ComplexMatrix sym = symmetrize(p);
  const auto es = eigensolve(sym);
  const Index n = sym.rows();
  Index rank = 0;
  for (Index i = 0; i < n; ++i) rank += es.eigenvalues()(i) > 0.5 ? 1 : 0;
  const double tr = sym.trace().real();
  if (std::abs(tr - static_cast<double>(rank)) > tol.proj * std::max<double>(1.0, static_cast<double>(n))) {
    std::ostringstream os;
    os << "projector trace " << tr << " does not match rank " << rank;
    throw InputError(os.str());
  }
  ComplexMatrix basis = es.eigenvectors().rightCols(rank);
  return Projector(sym, std::move(basis));
}

Projector Projector::onto(const ComplexMatrix& b) {
  return Projector(b * b.adjoint(), b);
}

Projector Projector::zero(Index dim) {
  return Projector(ComplexMatrix::Zero(dim, dim), ComplexMatrix(dim, 0));
}

Projector Projector::identity(Index dim) {
  return Projector(ComplexMatrix::Identity(dim, dim), ComplexMatrix::Identity(dim, dim));
}

Projector Projector::complement() const {
  const Index n = dim();
  if (rank() == 0) return identity(n);
  if (rank() == n) return zero(n);
  const auto es = eigensolve(p_);
  // eigenvalues ascending: the first n - rank belong to the kernel
  ComplexMatrix basis = es.eigenvectors().leftCols(n - rank());
  return onto(basis);
}

ComplexMatrix SpectralDecomposition::apply(const std::function<Complex(double)>& f) const {
  ComplexVector fv(eigenvalues.size());
  for (Index i = 0; i < eigenvalues.size(); ++i) fv(i) = f(eigenvalues(i));
  return eigenvectors * fv.asDiagonal() * eigenvectors.adjoint();
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition spectral_decompose(const HermitianOperator& h, const Tolerances& tol) {
  const auto es = eigensolve(h.matrix());
  SpectralDecomposition dec{es.eigenvalues(), es.eigenvectors()};
  const double recon = max_abs(h.matrix() - dec.reconstruct());
  if (recon > tol.recon * std::max(1.0, max_abs(h.matrix()))) {
    std::ostringstream os;
    os << "spectral reconstruction error " << recon << " exceeds tolerance";
    throw ConsistencyError(os.str(), recon, tol.recon);
  }
  return dec;
}

std::vector<Eigenspace> group_eigenspaces(const SpectralDecomposition& dec, double degeneracy_tol) {
  std::vector<Eigenspace> out;
  const Index n = dec.eigenvalues.size();
  Index begin = 0;
  while (begin < n) {
    Index end = begin + 1;
    while (end < n && dec.eigenvalues(end) - dec.eigenvalues(end - 1) <= degeneracy_tol) ++end;
    const double mean = dec.eigenvalues.segment(begin, end - begin).mean();
    out.push_back({mean, Projector::onto(dec.eigenvectors.middleCols(begin, end - begin))});
    begin = end;
  }
  return out;
}

double support_cutoff(const RealVector& ascending_eigenvalues, double rank_tol) {
  if (ascending_eigenvalues.size() == 0) return std::numeric_limits<double>::infinity();
  const double lmax = ascending_eigenvalues(ascending_eigenvalues.size() - 1);
  if (lmax <= rank_tol) return std::numeric_limits<double>::infinity();
  return rank_tol * lmax;
}

namespace {

struct SupportSplit {
  SpectralDecomposition dec;
  Index kernel_dim;  // eigenvalues [0, kernel_dim) are off support
};

SupportSplit split_support(const HermitianOperator& a, const Tolerances& tol) {
  SpectralDecomposition dec = spectral_decompose(a, tol);
  const Index n = dec.eigenvalues.size();
  const double lmax = dec.eigenvalues(n - 1);
  if (dec.eigenvalues(0) < -tol.psd * std::max(1.0, lmax)) {
    std::ostringstream os;
    os << "operator is not positive semidefinite: min eigenvalue " << dec.eigenvalues(0);
    throw InputError(os.str());
  }
  const double cut = support_cutoff(dec.eigenvalues, tol.rank);
  Index k = 0;
  while (k < n && !(dec.eigenvalues(k) > cut)) ++k;
  return {std::move(dec), k};
}

}  // namespace

Projector support_projector(const HermitianOperator& a, const Tolerances& tol) {
  const SupportSplit s = split_support(a, tol);
  const Index n = a.dim();
  if (s.kernel_dim == n) return Projector::zero(n);
  return Projector::onto(s.dec.eigenvectors.rightCols(n - s.kernel_dim));
}

HermitianOperator func_on_support(const HermitianOperator& a, const std::function<double(double)>& f,
                                  double off_support_value, const Tolerances& tol) {
  const SupportSplit s = split_support(a, tol);
  const Index n = a.dim();
  RealVector fv(n);
  for (Index i = 0; i < n; ++i) {
    if (i < s.kernel_dim) {
      fv(i) = off_support_value;
      continue;
    }
    const double lambda = s.dec.eigenvalues(i);
    fv(i) = f(lambda);
    if (!std::isfinite(fv(i))) {
      std::ostringstream os;
      os << "function is not finite on in-support eigenvalue " << lambda;
      throw InputError(os.str());
    }
  }
  const ComplexMatrix& v = s.dec.eigenvectors;
  return HermitianOperator(v * fv.cast<Complex>().asDiagonal() * v.adjoint(), tol);
}

HermitianOperator compressed_exp(const HermitianOperator& f, const Projector& suppressed) {
  if (suppressed.dim() != f.dim()) throw InputError("compressed_exp: projector dimension mismatch");
  const Index n = f.dim();
  if (suppressed.rank() == 0) return HermitianOperator(hermitian_exp(f));
  if (suppressed.rank() == n) return HermitianOperator(ComplexMatrix::Zero(n, n));
  const ComplexMatrix b = suppressed.complement().basis();
  const ComplexMatrix compressed = b.adjoint() * f.matrix() * b;
  const ComplexMatrix inner = hermitian_exp(HermitianOperator((compressed + compressed.adjoint()) / 2.0));
  return HermitianOperator(b * inner * b.adjoint());
}

ComplexMatrix hermitian_exp(const HermitianOperator& h) {
  const auto es = eigensolve(h.matrix());
  const RealVector ev = es.eigenvalues().array().exp();
  return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix unitary_evolution(const HermitianOperator& h, double t) {
  const auto es = eigensolve(h.matrix());
  const Index n = h.dim();
  ComplexVector phases(n);
  for (Index i = 0; i < n; ++i) phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const Index> dims, std::span<const Index> keep) {
  const Index nsub = static_cast<Index>(dims.size());
  Index total = 1;
  for (Index d : dims) {
    if (d <= 0) throw InputError("partial_trace: subsystem dimensions must be positive");
    total *= d;
  }
  if (m.rows() != total || m.cols() != total) {
    std::ostringstream os;
    os << "partial_trace: matrix dimension " << m.rows() << "x" << m.cols()
       << " does not match product of subsystem dimensions " << total;
    throw InputError(os.str());
  }
  std::vector<bool> kept(static_cast<std::size_t>(nsub), false);
  for (Index k : keep) {
    if (k < 0 || k >= nsub) throw InputError("partial_trace: kept subsystem index out of range");
    kept[static_cast<std::size_t>(k)] = true;
  }
  std::vector<Index> kept_dims, traced_dims;
  for (Index s = 0; s < nsub; ++s) (kept[static_cast<std::size_t>(s)] ? kept_dims : traced_dims).push_back(dims[static_cast<std::size_t>(s)]);
  const auto prod = [](const std::vector<Index>& v) {
    return std::accumulate(v.begin(), v.end(), Index{1}, std::multiplies<>());
  };
  const Index dk = prod(kept_dims);
  const Index dt = prod(traced_dims);

  // Full index from (kept multi-index, traced multi-index), row-major over subsystems.
  const auto full_index = [&](Index ki, Index ti) {
    std::vector<Index> digits(static_cast<std::size_t>(nsub));
    for (Index s = nsub - 1; s >= 0; --s) {
      const auto us = static_cast<std::size_t>(s);
      if (kept[us]) {
        digits[us] = ki % dims[us];
        ki /= dims[us];
      } else {
        digits[us] = ti % dims[us];
        ti /= dims[us];
      }
    }
    Index idx = 0;
    for (Index s = 0; s < nsub; ++s) idx = idx * dims[static_cast<std::size_t>(s)] + digits[static_cast<std::size_t>(s)];
    return idx;
  };

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Index i = 0; i < dk; ++i)
    for (Index j = 0; j < dk; ++j)
      for (Index t = 0; t < dt; ++t) out(i, j) += m(full_index(i, t), full_index(j, t));
  return out;
}

ComplexMatrix basis_projector(Index dim, Index i) {
  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  p(i, i) = 1.0;
  return p;
}

}  // namespace holevoft
