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

#include "holevoft/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace holevoft::channel {

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops, const Tolerances& tol) : ops_(std::move(ops)) {
  if (ops_.empty()) throw InputError("Kraus channel has no operators");
  const Index n = ops_.front().rows();
  for (const auto& k : ops_) {
    if (k.rows() != n || k.cols() != n || n == 0)
      throw InputError("Kraus operators must all be square with equal dimension");
    if (!k.allFinite()) throw InputError("Kraus operator has a non-finite entry");
  }
  // Kraus form is CP by construction; only completeness can fail here.
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& k : ops_) sum += k.adjoint() * k;
  const double violation = max_abs(sum - ComplexMatrix::Identity(n, n));
  if (violation > tol.trace) {
    std::ostringstream os;
    os << "Kraus completeness violated: max |sum_k K_k^dagger K_k - I| = " << violation;
    throw InputError(os.str());
  }
}

KrausChannel KrausChannel::identity(Index dim) {
  return KrausChannel({ComplexMatrix::Identity(dim, dim)});
}

TcpReport validate_tcp(const std::vector<ComplexMatrix>& kraus, const Tolerances& tol) {
  if (kraus.empty()) throw InputError("validate_tcp: empty Kraus list");
  const Index n = kraus.front().cols();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  TcpReport r;
  r.completeness_violation = max_abs(sum - ComplexMatrix::Identity(n, n));
  r.trace_preserving = r.completeness_violation <= tol.trace;
  const LinearMap map = [&kraus](const ComplexMatrix& x) {
    ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
    for (const auto& k : kraus) out += k * x * k.adjoint();
    return out;
  };
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(choi_matrix(map, n), Eigen::EigenvaluesOnly);
  r.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  r.completely_positive = r.min_choi_eigenvalue >= -tol.psd;
  return r;
}

ComplexMatrix choi_matrix(const LinearMap& map, Index dim) {
  ComplexMatrix choi = ComplexMatrix::Zero(dim * dim, dim * dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) {
      ComplexMatrix eij = ComplexMatrix::Zero(dim, dim);
      eij(i, j) = 1.0;
      const ComplexMatrix out = map(eij);
      if (out.rows() != dim || out.cols() != dim) throw InputError("linear map must preserve dimension");
      choi.block(i * dim, j * dim, dim, dim) = out;
    }
  return choi;
}

TcpReport validate_tcp(const LinearMap& map, Index dim, const Tolerances& tol) {
  TcpReport r;
  double defect = 0.0;
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) {
      ComplexMatrix eij = ComplexMatrix::Zero(dim, dim);
      eij(i, j) = 1.0;
      const Complex tr = map(eij).trace();
      defect = std::max(defect, std::abs(tr - Complex(i == j ? 1.0 : 0.0)));
    }
  r.completeness_violation = defect;
  r.trace_preserving = defect <= tol.trace;
  const ComplexMatrix choi = choi_matrix(map, dim);
  // a non-Hermitian Choi matrix already fails complete positivity
  if (hermiticity_defect(choi) > tol.hermiticity) {
    r.min_choi_eigenvalue = -std::numeric_limits<double>::infinity();
    r.completely_positive = false;
    return r;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((choi + choi.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  r.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  r.completely_positive = r.min_choi_eigenvalue >= -tol.psd;
  return r;
}

ComplexMatrix apply(const KrausChannel& c, const ComplexMatrix& x) {
  if (x.rows() != c.dim() || x.cols() != c.dim()) {
    std::ostringstream os;
    os << "channel of dimension " << c.dim() << " applied to a " << x.rows() << "x" << x.cols() << " operator";
    throw InputError(os.str());
  }
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const auto& k : c.ops()) out += k * x * k.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& c, const DensityMatrix& rho, const Tolerances& tol) {
  return DensityMatrix(apply(c, rho.matrix()), tol);
}

EvolutionProtocol::EvolutionProtocol(std::vector<ProtocolStep> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw InputError("evolution protocol has no steps");
  const Index n = steps_.front().hamiltonian.dim();
  for (const auto& s : steps_) {
    if (!(s.duration >= 0.0) || !std::isfinite(s.duration)) throw InputError("protocol step durations must be finite and non-negative");
    if (s.hamiltonian.dim() != n) throw InputError("protocol Hamiltonians have different dimensions");
  }
}

ComplexMatrix protocol_unitary(const EvolutionProtocol& p) {
  ComplexMatrix u = ComplexMatrix::Identity(p.dim(), p.dim());
  for (const auto& s : p.steps())
    if (s.duration > 0.0) u = unitary_evolution(s.hamiltonian, s.duration) * u;
  return u;
}

KrausChannel unitary_from_protocol(const EvolutionProtocol& p, const Tolerances& tol) {
  return KrausChannel({protocol_unitary(p)}, tol);
}

std::string_view to_string(StandardKind kind) {
  switch (kind) {
    case StandardKind::identity: return "identity";
    case StandardKind::depolarizing: return "depolarizing";
    case StandardKind::dephasing: return "dephasing";
    case StandardKind::bit_flip: return "bit_flip";
    case StandardKind::amplitude_damping: return "amplitude_damping";
  }
  return "unknown";
}

std::optional<StandardKind> parse_standard_kind(std::string_view name) {
  for (auto k : {StandardKind::identity, StandardKind::depolarizing, StandardKind::dephasing, StandardKind::bit_flip,
                 StandardKind::amplitude_damping})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

namespace {

ComplexMatrix shift(Index d) {
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) x((i + 1) % d, i) = 1.0;
  return x;
}

ComplexMatrix clock(Index d) {
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i)
    z(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(d));
  return z;
}

}  // namespace

KrausChannel standard_channel(StandardKind kind, Index dim, double q, const Tolerances& tol) {
  if (dim <= 0) throw InputError("channel dimension must be positive");
  if (!(q >= 0.0 && q <= 1.0)) {
    std::ostringstream os;
    os << to_string(kind) << " strength " << q << " outside [0, 1]";
    throw InputError(os.str());
  }
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  const auto dd = static_cast<double>(dim);
  std::vector<ComplexMatrix> ops;
  switch (kind) {
    case StandardKind::identity:
      ops.push_back(id);
      break;
    case StandardKind::depolarizing: {
      // (1/d²) Σ_ab W_ab ρ W_ab† = tr(ρ) I/d over Weyl operators W_ab = X^a Z^b
      ops.push_back(std::sqrt(1.0 - q + q / (dd * dd)) * id);
      const ComplexMatrix x = shift(dim), z = clock(dim);
      ComplexMatrix xa = id;
      for (Index a = 0; a < dim; ++a, xa = x * xa) {
        ComplexMatrix zb = id;
        for (Index b = 0; b < dim; ++b, zb = z * zb) {
          if (a == 0 && b == 0) continue;
          ops.push_back(std::sqrt(q) / dd * (xa * zb));
        }
      }
      break;
    }
    case StandardKind::dephasing:
      ops.push_back(std::sqrt(1.0 - q) * id);
      for (Index i = 0; i < dim; ++i) ops.push_back(std::sqrt(q) * basis_projector(dim, i));
      break;
    case StandardKind::bit_flip:
      ops.push_back(std::sqrt(1.0 - q) * id);
      ops.push_back(std::sqrt(q) * shift(dim));
      break;
    case StandardKind::amplitude_damping: {
      ComplexMatrix k0 = std::sqrt(1.0 - q) * id;
      k0(0, 0) = 1.0;
      ops.push_back(k0);
      for (Index i = 1; i < dim; ++i) {
        ComplexMatrix ki = ComplexMatrix::Zero(dim, dim);
        ki(0, i) = std::sqrt(q);
        ops.push_back(ki);
      }
      break;
    }
  }
  return KrausChannel(std::move(ops), tol);
}

}  // namespace holevoft::channel
