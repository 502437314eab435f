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

#include "holevoft/holevo.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "holevoft/random.hpp"

namespace holevoft::holevo {

namespace {

ComplexMatrix pseudo_log(const ComplexMatrix& a, const Tolerances& tol) {
  return func_on_support(HermitianOperator(a, tol), [](double x) { return std::log(x); }, 0.0, tol).matrix();
}

}  // namespace

Ensemble::Ensemble(std::vector<double> priors, std::vector<DensityMatrix> states, const Tolerances& tol) {
  if (priors.empty()) throw InputError("ensemble has no words");
  if (priors.size() != states.size()) throw InputError("ensemble priors and states differ in length");
  const Index d = states.front().dim();
  double total = 0.0;
  for (std::size_t j = 0; j < priors.size(); ++j) {
    if (!std::isfinite(priors[j]) || priors[j] < 0.0) {
      std::ostringstream os;
      os << "prior " << j << " is " << priors[j] << "; priors must be non-negative";
      throw InputError(os.str());
    }
    if (states[j].dim() != d) throw InputError("ensemble states have different dimensions");
    total += priors[j];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "priors sum to " << total << ", expected 1";
    throw InputError(os.str());
  }
  double kept = 0.0;
  for (std::size_t j = 0; j < priors.size(); ++j)
    if (priors[j] > tol.prob_floor) {
      priors_.push_back(priors[j]);
      states_.push_back(std::move(states[j]));
      kept += priors[j];
    }
  if (priors_.empty()) throw InputError("every word has zero prior");
  for (auto& p : priors_) p /= kept;
}

DensityMatrix Ensemble::average_state() const {
  ComplexMatrix avg = ComplexMatrix::Zero(dim(), dim());
  for (std::size_t j = 0; j < size(); ++j) avg += priors_[j] * states_[j].matrix();
  return DensityMatrix(avg);
}

CqChannelInstance::CqChannelInstance(Ensemble ensemble, Povm povm) : ensemble_(std::move(ensemble)), povm_(std::move(povm)) {
  if (ensemble_.dim() != povm_.dim()) {
    std::ostringstream os;
    os << "encoding dimension " << ensemble_.dim() << " does not match POVM dimension " << povm_.dim();
    throw InputError(os.str());
  }
}

Eigen::MatrixXd conditional_probabilities(const CqChannelInstance& inst, const Tolerances& tol) {
  const auto& e = inst.ensemble();
  Eigen::MatrixXd c(static_cast<Index>(e.size()), static_cast<Index>(inst.povm().size()));
  for (std::size_t j = 0; j < e.size(); ++j)
    c.row(static_cast<Index>(j)) = measurement::povm_probabilities(e.states()[j], inst.povm(), tol).transpose();
  return c;
}

RealVector outcome_marginal(const Eigen::MatrixXd& conditional, std::span<const double> priors) {
  RealVector m = RealVector::Zero(conditional.cols());
  for (Index j = 0; j < conditional.rows(); ++j) m += priors[static_cast<std::size_t>(j)] * conditional.row(j).transpose();
  return m;
}

double mutual_information(const Eigen::MatrixXd& conditional, std::span<const double> priors, double prob_floor) {
  const RealVector marginal = outcome_marginal(conditional, priors);
  double info = 0.0;
  for (Index j = 0; j < conditional.rows(); ++j)
    for (Index k = 0; k < conditional.cols(); ++k) {
      const double joint = priors[static_cast<std::size_t>(j)] * conditional(j, k);
      if (joint > prob_floor) info += joint * std::log(conditional(j, k) / marginal(k));
    }
  return info;
}

double mutual_information(const CqChannelInstance& inst, const Tolerances& tol) {
  return mutual_information(conditional_probabilities(inst, tol), inst.ensemble().priors(), tol.prob_floor);
}

double shannon_entropy(std::span<const double> p) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

InformationDecomposition mutual_information_decomposition(const CqChannelInstance& inst, const Tolerances& tol) {
  const auto& priors = inst.ensemble().priors();
  const Eigen::MatrixXd c = conditional_probabilities(inst, tol);
  const RealVector marginal = outcome_marginal(c, priors);
  double cond = 0.0;
  for (Index k = 0; k < c.cols(); ++k) {
    if (!(marginal(k) > tol.prob_floor)) continue;
    double inner = 0.0;
    for (Index j = 0; j < c.rows(); ++j) {
      const double posterior = c(j, k) * priors[static_cast<std::size_t>(j)] / marginal(k);
      if (posterior > 0.0) inner += posterior * std::log(posterior);
    }
    cond += marginal(k) * inner;
  }
  return {shannon_entropy(priors), cond};
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

double holevo_chi(const Ensemble& e) {
  double avg_entropy = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j) avg_entropy += e.priors()[j] * von_neumann_entropy(e.states()[j]);
  return von_neumann_entropy(e.average_state()) - avg_entropy;
}

DensityMatrix build_joint_state(const Ensemble& e, const NaimarkDilation& dil, const Tolerances& tol) {
  if (dil.system_dim != e.dim()) throw InputError("dilation and ensemble encoding dimensions differ");
  const Index words = static_cast<Index>(e.size());
  const ComplexMatrix probe0 = dil.probe_state();
  const Index n = e.dim() * dil.probe_dim * words;
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < words; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    rho += e.priors()[uj] * kron(kron(e.states()[uj].matrix(), probe0), basis_projector(words, j));
  }
  return DensityMatrix(rho, tol);
}

CompositeConstruction build_construction(const Ensemble& e, const NaimarkDilation& dil, const Tolerances& tol) {
  if (dil.system_dim != e.dim()) throw InputError("dilation and ensemble encoding dimensions differ");
  CompositeConstruction c;
  c.encoding_dim = e.dim();
  c.probe_dim = dil.probe_dim;
  c.message_dim = static_cast<Index>(e.size());
  c.priors = e.priors();
  c.outcome_projectors = dil.projectors;
  const Index d = c.encoding_dim, kc = c.probe_dim, words = c.message_dim;
  const Index dk = d * kc;
  const ComplexMatrix probe0 = dil.probe_state();

  // π_{k|j} = tr{(ρ_j ⊗ |0⟩⟨0|) Π_k}
  c.conditional = Eigen::MatrixXd::Zero(words, kc);
  for (Index j = 0; j < words; ++j)
    c.conditional.row(j) = measurement::dilated_probabilities(e.states()[static_cast<std::size_t>(j)], dil).cwiseMax(0.0).transpose();
  c.marginal = outcome_marginal(c.conditional, c.priors);

  c.log_ratio = Eigen::MatrixXd::Constant(words, kc, std::numeric_limits<double>::quiet_NaN());
  c.retained.assign(static_cast<std::size_t>(words), std::vector<bool>(static_cast<std::size_t>(kc), false));
  for (Index j = 0; j < words; ++j)
    for (Index k = 0; k < kc; ++k) {
      if (!(c.conditional(j, k) > tol.prob_floor)) continue;
      if (!(c.marginal(k) > tol.prob_floor)) {
        std::ostringstream os;
        os << "inconsistent marginal: pi_k = " << c.marginal(k) << " for outcome " << k << " while pi_{k|j} = "
           << c.conditional(j, k) << " for word " << j;
        throw InputError(os.str());
      }
      c.retained[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = true;
      c.log_ratio(j, k) = std::log(c.conditional(j, k) / c.marginal(k));
    }

  // supp(ρ_j) ⊆ supp(ρ̄)
  const DensityMatrix avg = e.average_state();
  const ComplexMatrix off_avg = support_projector(avg.as_hermitian(), tol).complement().matrix();
  for (std::size_t j = 0; j < e.size(); ++j) {
    const double leak = (off_avg * e.states()[j].matrix()).trace().real();
    if (leak > tol.psd + static_cast<double>(d) * tol.rank / e.priors()[j]) {
      std::ostringstream os;
      os << "state " << j << " has weight " << leak << " outside the support of the average state";
      throw InputError(os.str());
    }
  }

  c.average_with_probe = kron(avg.matrix(), probe0);
  const HermitianOperator avg_probe(c.average_with_probe, tol);
  c.log_average_with_probe = pseudo_log(c.average_with_probe, tol);
  const ComplexMatrix off_support = support_projector(avg_probe, tol).complement().matrix();

  const Index n = dk * words;
  c.joint_state = ComplexMatrix::Zero(n, n);
  c.initial_form = ComplexMatrix::Zero(n, n);
  c.final_form = ComplexMatrix::Zero(n, n);
  ComplexMatrix suppression_basis(n, 0);
  for (Index j = 0; j < words; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const ComplexMatrix& rho_j = e.states()[uj].matrix();
    const ComplexMatrix msg = basis_projector(words, j);
    c.joint_state += e.priors()[uj] * kron(kron(rho_j, probe0), msg);

    // ln(ρ̂_j⁻¹): logarithm of the inverse on the support, 0 on the kernel
    const ComplexMatrix log_inv =
        func_on_support(HermitianOperator(rho_j, tol), [](double x) { return std::log(1.0 / x); }, 0.0, tol).matrix();
    c.initial_form += kron(kron(log_inv, probe0), msg);

    ComplexMatrix block = -c.log_average_with_probe;
    ComplexMatrix suppressed = off_support;
    for (Index k = 0; k < kc; ++k) {
      const ComplexMatrix& pk = dil.projectors[static_cast<std::size_t>(k)].matrix();
      if (c.retained[uj][static_cast<std::size_t>(k)])
        block -= c.log_ratio(j, k) * pk;
      else
        suppressed += pk;
    }
    c.final_form += kron(block, msg);

    // range(suppressed) is the span of the kernel of ρ̄⊗|0⟩⟨0| and of every Π_k with π_{k|j} = 0
    const Projector nj = support_projector(HermitianOperator(suppressed, tol), tol);
    const ComplexMatrix lifted = kron(nj.basis(), ComplexMatrix(ComplexVector::Unit(words, j)));
    ComplexMatrix grown(n, suppression_basis.cols() + lifted.cols());
    grown << suppression_basis, lifted;
    suppression_basis = std::move(grown);
    c.block_suppression.push_back(nj);
  }
  c.final_suppression = Projector::onto(suppression_basis);
  return c;
}

ObservablePair build_observables(const CompositeConstruction& c, const Tolerances& tol) {
  return {measurement::observable_from_hermitian(HermitianOperator(c.initial_form, tol), tol),
          measurement::observable_from_compression(HermitianOperator(c.final_form, tol), c.final_suppression, tol)};
}

ObservablePair build_observables(const Ensemble& e, const NaimarkDilation& dil, const Tolerances& tol) {
  return build_observables(build_construction(e, dil, tol), tol);
}

GtChain gt_chain(const CompositeConstruction& c, double gamma, const Tolerances& tol) {
  GtChain chain;
  chain.gamma = gamma;
  const Index kc = c.probe_dim;
  for (Index j = 0; j < c.message_dim; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    ComplexMatrix exponent = c.log_average_with_probe;
    ComplexMatrix weighted = ComplexMatrix::Zero(exponent.rows(), exponent.cols());
    for (Index k = 0; k < kc; ++k) {
      if (!c.retained[uj][static_cast<std::size_t>(k)]) continue;
      const ComplexMatrix& pk = c.outcome_projectors[static_cast<std::size_t>(k)].matrix();
      exponent += c.log_ratio(j, k) * pk;
      weighted += (c.conditional(j, k) / c.marginal(k)) * pk;
    }
    const HermitianOperator e = compressed_exp(HermitianOperator(exponent, tol), c.block_suppression[uj]);
    chain.g1 += c.priors[uj] * e.matrix().trace().real();
    chain.g2 += c.priors[uj] * (c.average_with_probe * weighted).trace().real();
  }
  chain.checks.push_back(make_check("chain_gamma_le_g1", chain.gamma - chain.g1, 1e-8));
  chain.checks.push_back(make_check("chain_g1_le_g2", chain.g1 - chain.g2, 1e-8));
  chain.checks.push_back(make_check("chain_g2_unity", std::abs(chain.g2 - 1.0), 1e-9));
  return chain;
}

double equality_residual(const CqChannelInstance& inst, double gamma, const Tolerances& tol) {
  const auto& e = inst.ensemble();
  const auto& elements = inst.povm().elements();
  const Eigen::MatrixXd c = conditional_probabilities(inst, tol);
  const RealVector marginal = outcome_marginal(c, e.priors());
  const ComplexMatrix log_avg = pseudo_log(e.average_state().matrix(), tol);
  const double log_gamma = std::log(gamma);
  double worst = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j) {
    const HermitianOperator rho(e.states()[j].matrix(), tol);
    const ComplexMatrix p = support_projector(rho, tol).matrix();
    ComplexMatrix r = pseudo_log(rho.matrix(), tol) - p * log_avg * p + log_gamma * p;
    for (std::size_t k = 0; k < elements.size(); ++k) {
      const auto jk = static_cast<Index>(j), kk = static_cast<Index>(k);
      if (c(jk, kk) > tol.prob_floor) {
        r -= std::log(c(jk, kk) / marginal(kk)) * (p * elements[k].matrix() * p);
      } else {
        const double leak = max_abs(elements[k].matrix() * p);
        if (leak > 1e-8) {
          std::ostringstream os;
          os << "outcome " << k << " has pi_{k|j} = " << c(jk, kk) << " for word " << j
             << " but |M_k P_j|_max = " << leak << "; prob_floor is too large for this instance";
          throw ConsistencyError(os.str(), leak, 1e-8);
        }
      }
    }
    worst = std::max(worst, max_abs(p * r * p));
  }
  return worst;
}

HolevoReport analyze_with_dilation(const CqChannelInstance& inst, const NaimarkDilation& dil, const Tolerances& tol) {
  const auto& e = inst.ensemble();
  const CompositeConstruction c = build_construction(e, dil, tol);
  ObservablePair obs = build_observables(c, tol);
  const Index n = c.joint_state.rows();
  const ttm::TwoTimeProtocol protocol(DensityMatrix(c.joint_state, tol), std::move(obs.initial),
                                      channel::KrausChannel::identity(n), std::move(obs.final));
  const ttm::FtReport ft = ttm::verify_ft(protocol, {1e-8, 1e-8}, tol);

  HolevoReport r;
  r.gamma_distribution = ft.lhs;
  r.gamma_efficacy = ft.gamma;
  const ComplexMatrix exp_neg_af =
      compressed_exp(HermitianOperator(ComplexMatrix(-c.final_form), tol), c.final_suppression).matrix();
  const ComplexMatrix exp_ai = hermitian_exp(HermitianOperator(c.initial_form, tol));
  r.gamma = (exp_neg_af * c.joint_state * exp_ai).trace().real();
  if (std::abs(r.gamma_distribution - r.gamma) > 1e-8) {
    std::ostringstream os;
    os << "efficacy routes disagree: distribution " << r.gamma_distribution << ", trace " << r.gamma;
    throw ConsistencyError(os.str(), r.gamma_distribution, r.gamma);
  }
  r.neg_log_gamma = -std::log(r.gamma);
  r.max_infinite_probability = (c.final_suppression.matrix() * c.joint_state).trace().real();

  r.conditional = conditional_probabilities(inst, tol);
  r.marginal = outcome_marginal(r.conditional, e.priors());
  r.mutual_information = mutual_information(r.conditional, e.priors(), tol.prob_floor);
  const InformationDecomposition dec = mutual_information_decomposition(inst, tol);
  r.shannon = dec.shannon;
  r.conditional_term = dec.conditional;
  r.chi = holevo_chi(e);
  r.delta = ft.delta;
  r.mean_delta_a = ft.mean_delta_a;
  r.mean_delta_a_trace = (c.joint_state * (c.final_form - c.initial_form)).trace().real();
  r.chain = gt_chain(c, r.gamma, tol);
  r.equality_residual = equality_residual(inst, r.gamma, tol);
  r.bound_slack = (r.chi - r.mutual_information) - r.neg_log_gamma;

  const double gap = r.chi - r.mutual_information;
  r.checks.push_back(make_check("route_agreement", std::abs(r.gamma_distribution - r.gamma), 1e-8));
  r.checks.push_back(make_check("sharpened_bound", -r.bound_slack, 1e-8));
  r.checks.push_back(make_check("neg_log_gamma_nonnegative", -r.neg_log_gamma, 1e-8));
  r.checks.push_back(make_check("gamma_at_most_one", r.gamma - 1.0, 1e-9));
  r.checks.push_back(make_check("mean_identity", std::abs(r.mean_delta_a - gap), 1e-8));
  r.checks.push_back(make_check("mean_identity_trace", std::abs(r.mean_delta_a_trace - gap), 1e-8));
  for (const auto& ch : r.chain.checks) r.checks.push_back(ch);
  r.checks.push_back(make_check("information_nonnegative", -r.mutual_information, 1e-9));
  r.checks.push_back(make_check("information_at_most_shannon", r.mutual_information - r.shannon, 1e-9));
  r.checks.push_back(make_check("chi_nonnegative", -r.chi, 1e-9));
  r.checks.push_back(make_check("decomposition_identity", std::abs(dec.shannon + dec.conditional - r.mutual_information), 1e-10));
  return r;
}

HolevoReport analyze(const CqChannelInstance& inst, const Tolerances& tol) {
  return analyze_with_dilation(inst, measurement::naimark_dilate(inst.povm(), tol), tol);
}

DilationComparison compare_dilations(const CqChannelInstance& inst, int randomized_trials, std::uint64_t seed,
                                     const Tolerances& tol) {
  DilationComparison out;
  out.canonical_neg_log_gamma = analyze(inst, tol).neg_log_gamma;
  for (int t = 0; t < randomized_trials; ++t) {
    const auto dil = measurement::naimark_dilate_randomized(inst.povm(), seed + static_cast<std::uint64_t>(t), tol);
    const double v = analyze_with_dilation(inst, dil, tol).neg_log_gamma;
    out.max_abs_difference = std::max(out.max_abs_difference, std::abs(v - out.canonical_neg_log_gamma));
    ++out.trials;
  }
  return out;
}

CqChannelInstance random_instance(Index dim, Index words, Index outcomes, std::uint64_t seed, StateKind kind) {
  if (dim < 1 || words < 1 || outcomes < 1) throw InputError("random_instance: dimensions must be at least 1");
  auto rng = random::make_engine(seed);
  std::vector<double> priors = random::random_simplex(words, rng);
  std::vector<DensityMatrix> states;
  for (Index j = 0; j < words; ++j) {
    switch (kind) {
      case StateKind::full_rank:
        states.push_back(random::random_density(dim, dim, rng));
        break;
      case StateKind::pure:
        states.push_back(random::random_pure_state(dim, rng));
        break;
      case StateKind::rank_deficient: {
        const Index max_rank = std::max<Index>(1, dim - 1);
        std::uniform_int_distribution<Index> rank(1, max_rank);
        states.push_back(random::random_density(dim, rank(rng), rng));
        break;
      }
    }
  }
  // priors are a simplex draw; absorb rounding so they pass the 1e-12 check
  const double total = std::accumulate(priors.begin(), priors.end(), 0.0);
  for (auto& p : priors) p /= total;
  return CqChannelInstance(Ensemble(std::move(priors), std::move(states)),
                           Povm(random::random_povm_elements(dim, outcomes, rng)));
}

}  // namespace holevoft::holevo
