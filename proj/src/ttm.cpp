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

#include "holevoft/ttm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace holevoft::ttm {

TwoTimeProtocol::TwoTimeProtocol(DensityMatrix initial_state, ExtendedObservable initial_observable,
                                 KrausChannel channel, ExtendedObservable final_observable)
    : initial_state_(std::move(initial_state)),
      initial_observable_(std::move(initial_observable)),
      channel_(std::move(channel)),
      final_observable_(std::move(final_observable)) {
  const Index n = initial_state_.dim();
  if (initial_observable_.dim() != n || channel_.dim() != n || final_observable_.dim() != n) {
    std::ostringstream os;
    os << "two-time protocol dimensions disagree: state " << n << ", initial observable " << initial_observable_.dim()
       << ", channel " << channel_.dim() << ", final observable " << final_observable_.dim();
    throw InputError(os.str());
  }
  if (initial_observable_.has_infinite_branch()) throw InputError("initial observable must have a finite spectrum");
}

double DeltaDistribution::total() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.probability;
  return s;
}

double DeltaDistribution::mean() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.probability * a.delta;
  return s;
}

double DeltaDistribution::mean_exp_neg() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.probability * std::exp(-a.delta);
  return s;
}

JointDistribution joint_distribution(const TwoTimeProtocol& p, const Tolerances& tol) {
  const auto& initial = p.initial_observable().branches();
  const auto& final = p.final_observable().branches();
  JointDistribution j;
  j.entries = Eigen::MatrixXd::Zero(static_cast<Index>(initial.size()), static_cast<Index>(final.size()));
  for (const auto& b : initial) j.initial_values.push_back(b.value);
  for (const auto& b : final) j.final_values.push_back(b.value);

  const ComplexMatrix& rho = p.initial_state().matrix();
  for (std::size_t m = 0; m < initial.size(); ++m) {
    const ComplexMatrix& pm = initial[m].projector.matrix();
    const ComplexMatrix evolved = channel::apply(p.channel(), ComplexMatrix(pm * rho * pm));
    for (std::size_t n = 0; n < final.size(); ++n) {
      const double v = (final[n].projector.matrix() * evolved).trace().real();
      if (final[n].is_infinite()) {
        if (v > tol.prob_floor) {
          std::ostringstream os;
          os << "ill-posed protocol: infinite final outcome reached with probability " << v << " from initial branch "
             << m << " (value " << initial[m].value << ")";
          throw IllPosedError(os.str());
        }
        continue;
      }
      j.entries(static_cast<Index>(m), static_cast<Index>(n)) = std::max(0.0, v);
    }
  }
  const double total = j.total();
  if (std::abs(total - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "joint distribution sums to " << total;
    throw ConsistencyError(os.str(), total, 1.0);
  }
  return j;
}

DeltaDistribution delta_a_distribution(const JointDistribution& j, const Tolerances& tol) {
  std::vector<Atom> raw;
  for (Index m = 0; m < j.entries.rows(); ++m)
    for (Index n = 0; n < j.entries.cols(); ++n) {
      const double fv = j.final_values[static_cast<std::size_t>(n)];
      const double prob = j.entries(m, n);
      if (std::isinf(fv) || !(prob > 0.0)) continue;
      raw.push_back({fv - j.initial_values[static_cast<std::size_t>(m)], prob});
    }
  std::sort(raw.begin(), raw.end(), [](const Atom& a, const Atom& b) { return a.delta < b.delta; });

  DeltaDistribution out;
  double prev = 0.0;
  double weighted = 0.0;
  for (const auto& a : raw) {
    if (!out.atoms.empty() && a.delta - prev <= tol.degeneracy * std::max(1.0, std::abs(a.delta))) {
      auto& back = out.atoms.back();
      weighted += a.probability * a.delta;
      back.probability += a.probability;
      back.delta = weighted / back.probability;
    } else {
      out.atoms.push_back(a);
      weighted = a.probability * a.delta;
    }
    prev = a.delta;
  }
  return out;
}

Complex characteristic_function(const JointDistribution& j, Complex s, const Tolerances& tol) {
  Complex g = 0.0;
  for (Index m = 0; m < j.entries.rows(); ++m)
    for (Index n = 0; n < j.entries.cols(); ++n) {
      const double fv = j.final_values[static_cast<std::size_t>(n)];
      const double prob = j.entries(m, n);
      if (std::isinf(fv)) {
        if (prob > tol.prob_floor) throw IllPosedError("characteristic function: infinite outcome has non-zero probability");
        continue;
      }
      g += prob * std::exp(Complex(0.0, 1.0) * s * (fv - j.initial_values[static_cast<std::size_t>(m)]));
    }
  return g;
}

double efficacy(const TwoTimeProtocol& p, const Tolerances& tol) {
  const auto& ai = p.initial_observable();
  const auto& af = p.final_observable();
  const ComplexMatrix back_action = measurement::measurement_channel(p.initial_state().matrix(), ai.as_measurement(tol));
  const ComplexMatrix exp_ai = hermitian_exp(HermitianOperator(ai.finite_part(), tol));
  const ComplexMatrix evolved = channel::apply(p.channel(), ComplexMatrix(back_action * exp_ai));
  const HermitianOperator exp_neg_af =
      compressed_exp(HermitianOperator(ComplexMatrix(-af.finite_part()), tol), af.infinite_projector());
  const Complex gamma = (exp_neg_af.matrix() * evolved).trace();
  if (std::abs(gamma.imag()) > 1e-10 * std::max(1.0, std::abs(gamma.real()))) {
    std::ostringstream os;
    os << "efficacy has imaginary part " << gamma.imag();
    throw ConsistencyError(os.str(), gamma.real(), gamma.imag());
  }
  return gamma.real();
}

FtReport verify_ft(const TwoTimeProtocol& p, const FtTolerances& ft_tol, const Tolerances& tol) {
  FtReport r;
  r.joint = joint_distribution(p, tol);
  r.delta = delta_a_distribution(r.joint, tol);
  r.lhs = r.delta.mean_exp_neg();
  r.gamma = efficacy(p, tol);
  r.mean_delta_a = r.delta.mean();
  r.jensen_slack = r.mean_delta_a + std::log(r.gamma);
  r.max_violation = std::abs(r.lhs - r.gamma) / std::max(1.0, std::abs(r.gamma));
  r.checks.push_back(make_check("fluctuation_theorem", r.max_violation, ft_tol.identity));
  r.checks.push_back(make_check("jensen_bound", -r.jensen_slack, ft_tol.jensen));
  r.checks.push_back(make_check("normalization", std::abs(r.delta.total() - 1.0), 1e-10));
  return r;
}

double log_partition_function(const HermitianOperator& h, double beta) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  const RealVector& e = es.eigenvalues();
  const double ground = e.minCoeff();
  return -beta * ground + std::log((-beta * (e.array() - ground)).exp().sum());
}

DensityMatrix gibbs_state(const HermitianOperator& h, double beta, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  const RealVector& e = es.eigenvalues();
  RealVector w = (-beta * (e.array() - e.minCoeff())).exp();
  w /= w.sum();
  return DensityMatrix(es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint(), tol);
}

JarzynskiScenario jarzynski_scenario(const HermitianOperator& h0, const channel::EvolutionProtocol& protocol, double beta,
                                     const JarzynskiTolerances& jtol, const Tolerances& tol) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InputError("inverse temperature beta must be positive and finite");
  if (protocol.dim() != h0.dim()) throw InputError("initial Hamiltonian and protocol dimensions differ");
  const HermitianOperator& h_final = protocol.final_hamiltonian();

  TwoTimeProtocol ttm(gibbs_state(h0, beta, tol),
                      measurement::observable_from_hermitian(HermitianOperator(ComplexMatrix(beta * h0.matrix()), tol), tol),
                      channel::unitary_from_protocol(protocol, tol),
                      measurement::observable_from_hermitian(HermitianOperator(ComplexMatrix(beta * h_final.matrix()), tol), tol));

  JarzynskiReport r;
  r.beta = beta;
  r.ft = verify_ft(ttm, {}, tol);
  const double log_z0 = log_partition_function(h0, beta);
  const double log_zt = log_partition_function(h_final, beta);
  r.z_initial = std::exp(log_z0);
  r.z_final = std::exp(log_zt);
  r.partition_ratio = std::exp(log_zt - log_z0);
  r.mean_exp_work = r.ft.lhs;
  r.mean_work = r.ft.mean_delta_a / beta;
  r.delta_free_energy = -(log_zt - log_z0) / beta;

  const double scale = std::max(1.0, r.partition_ratio);
  r.checks.push_back(make_check("jarzynski_equality", std::abs(r.mean_exp_work - r.partition_ratio) / scale, jtol.identity));
  r.checks.push_back(make_check("efficacy_partition_ratio", std::abs(r.ft.gamma - r.partition_ratio) / scale, jtol.identity));
  r.checks.push_back(make_check("maximum_work", beta * (r.delta_free_energy - r.mean_work), jtol.work_bound));
  for (const auto& c : r.ft.checks) r.checks.push_back(c);
  return JarzynskiScenario{std::move(ttm), std::move(r)};
}

}  // namespace holevoft::ttm
