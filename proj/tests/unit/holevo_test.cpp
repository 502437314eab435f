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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "holevoft/holevo.hpp"
#include "holevoft/random.hpp"
#include "test_util.hpp"

namespace holevoft::holevo {
namespace {

using testing::binary_entropy;
using testing::diag;
using testing::outer;

const double kLn2 = std::log(2.0);

Povm z_povm() { return Povm({diag({1, 0}), diag({0, 1})}); }

CqChannelInstance zero_plus() {
  return CqChannelInstance(Ensemble({0.5, 0.5}, {DensityMatrix(diag({1, 0})), DensityMatrix::pure(testing::plus_ket())}), z_povm());
}

CqChannelInstance orthogonal_binary() {
  return CqChannelInstance(Ensemble({0.5, 0.5}, {DensityMatrix(diag({1, 0})), DensityMatrix(diag({0, 1}))}), z_povm());
}

CqChannelInstance identical_states(Index outcomes, std::uint64_t seed) {
  auto rng = random::make_engine(seed);
  const auto rho = random::random_density(3, 3, rng);
  return CqChannelInstance(Ensemble({0.2, 0.3, 0.5}, {rho, rho, rho}), Povm(random::random_povm_elements(3, outcomes, rng)));
}

StateKind kind_for(int i) { return static_cast<StateKind>(i % 3); }

CqChannelInstance sweep_instance(int i) {
  const Index d = 1 + i % 3;
  const Index j = 1 + (i / 3) % 3;
  const Index k = 1 + (i / 9) % 4;
  return random_instance(d, j, k, 9000 + static_cast<std::uint64_t>(i), kind_for(i / 36));
}

// Worked example, closed forms.
const double kWorkedI = 0.5 * std::log(4.0 / 3) + 0.25 * std::log(2.0 / 3) + 0.25 * kLn2;
const double kWorkedChi = binary_entropy((1 + 1 / std::sqrt(2.0)) / 2);

// γ for the worked example via the reduced-space formula on the encoding qubit:
// ρ₀ = |0⟩⟨0| sees only exp(⟨0|ln ρ̄|0⟩)·π_{0|0}/π_0, ρ₊ sees the full exponential.
double worked_gamma_oracle() {
  const ComplexMatrix avg = (diag({1, 0}) + outer(testing::plus_ket())) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(avg);
  const ComplexMatrix log_avg =
      es.eigenvectors() * es.eigenvalues().array().log().matrix().cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  const double term0 = std::exp(log_avg(0, 0).real()) * 4.0 / 3.0;
  const ComplexMatrix m = log_avg + std::log(2.0 / 3) * diag({1, 0}) + kLn2 * diag({0, 1});
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> em(m);
  const ComplexMatrix e =
      em.eigenvectors() * em.eigenvalues().array().exp().matrix().cast<Complex>().asDiagonal() * em.eigenvectors().adjoint();
  const ComplexVector plus = testing::plus_ket();
  const double termp = plus.dot(e * plus).real();
  return 0.5 * (term0 + termp);
}

TEST(Ensemble, Validation) {
  const auto rho = DensityMatrix::maximally_mixed(2);
  EXPECT_THROW(Ensemble({0.5, 0.6}, {rho, rho}), InputError);
  EXPECT_THROW(Ensemble({0.5}, {rho, rho}), InputError);
  EXPECT_THROW(Ensemble({1.5, -0.5}, {rho, rho}), InputError);
  EXPECT_THROW(Ensemble({0.5, 0.5}, {rho, DensityMatrix::maximally_mixed(3)}), InputError);
  const Ensemble stripped({0.0, 1.0}, {DensityMatrix(diag({1, 0})), rho});
  ASSERT_EQ(stripped.size(), 1u);
  EXPECT_DOUBLE_EQ(stripped.priors()[0], 1.0);
}

TEST(CqChannelInstance, DimensionMismatch) {
  EXPECT_THROW(CqChannelInstance(Ensemble({1.0}, {DensityMatrix::maximally_mixed(3)}), z_povm()), InputError);
}

TEST(ConditionalProbabilities, Examples) {
  const auto orth = conditional_probabilities(orthogonal_binary());
  EXPECT_LT((orth - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  const auto same = conditional_probabilities(identical_states(4, 1));
  for (Index j = 1; j < 3; ++j) EXPECT_LT((same.row(j) - same.row(0)).cwiseAbs().maxCoeff(), 1e-14);
  const auto zp = conditional_probabilities(zero_plus());
  EXPECT_NEAR(zp(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(zp(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(zp(1, 0), 0.5, 1e-15);
  EXPECT_NEAR(zp(1, 1), 0.5, 1e-15);
}

TEST(ConditionalProbabilities, RowsNormalized) {
  for (int i = 0; i < 30; ++i) {
    const auto c = conditional_probabilities(sweep_instance(i));
    for (Index j = 0; j < c.rows(); ++j) EXPECT_NEAR(c.row(j).sum(), 1.0, 1e-10);
  }
}

TEST(MutualInformation, Examples) {
  EXPECT_NEAR(mutual_information(identical_states(3, 2)), 0.0, 1e-12);
  EXPECT_NEAR(mutual_information(orthogonal_binary()), kLn2, 1e-15);
  EXPECT_NEAR(mutual_information(zero_plus()), kWorkedI, 1e-15);
  EXPECT_NEAR(kWorkedI, 0.21576155433883565, 1e-15);
}

TEST(MutualInformation, DecompositionIdentity) {
  const auto perfect = mutual_information_decomposition(orthogonal_binary());
  EXPECT_NEAR(perfect.conditional, 0.0, 1e-15);
  EXPECT_NEAR(perfect.shannon, kLn2, 1e-15);
  const auto same = mutual_information_decomposition(identical_states(3, 3));
  EXPECT_NEAR(same.conditional, -same.shannon, 1e-12);
  for (int i = 0; i < 40; ++i) {
    const auto inst = sweep_instance(i);
    const auto dec = mutual_information_decomposition(inst);
    EXPECT_NEAR(dec.shannon + dec.conditional, mutual_information(inst), 1e-10);
  }
}

TEST(MutualInformation, NonnegativeAndCappedByShannon) {
  for (int i = 0; i < 60; ++i) {
    const auto inst = sweep_instance(i);
    const double info = mutual_information(inst);
    EXPECT_GE(info, -1e-12);
    EXPECT_LE(info, shannon_entropy(inst.ensemble().priors()) + 1e-9);
  }
}

TEST(MutualInformation, ShannonCapReachedOnlyByPerfectDecoding) {
  // three orthogonal qutrit states, non-uniform priors, discriminating POVM
  const CqChannelInstance perfect(Ensemble({0.2, 0.3, 0.5}, {DensityMatrix(diag({1, 0, 0})), DensityMatrix(diag({0, 1, 0})),
                                                             DensityMatrix(diag({0, 0, 1}))}),
                                  Povm({diag({1, 0, 0}), diag({0, 1, 0}), diag({0, 0, 1})}));
  const std::vector<double> pri{0.2, 0.3, 0.5};
  EXPECT_NEAR(mutual_information(perfect), shannon_entropy(pri), 1e-12);
  // merging two outcomes loses information
  const CqChannelInstance coarse(perfect.ensemble(), Povm({diag({1, 1, 0}), diag({0, 0, 1})}));
  EXPECT_LT(mutual_information(coarse), shannon_entropy(pri) - 1e-3);
}

TEST(HolevoChi, Examples) {
  EXPECT_NEAR(holevo_chi(orthogonal_binary().ensemble()), kLn2, 1e-15);
  EXPECT_NEAR(holevo_chi(identical_states(2, 4).ensemble()), 0.0, 1e-12);
  EXPECT_NEAR(holevo_chi(zero_plus().ensemble()), kWorkedChi, 1e-14);
  EXPECT_NEAR(kWorkedChi, 0.4164955306996875, 1e-15);
}

TEST(HolevoChi, OrthogonalSupportsGiveShannonEntropy) {
  auto rng = random::make_engine(81);
  const ComplexMatrix u = random::random_unitary(4, rng);
  // two mixed states on orthogonal 2-dimensional blocks
  const ComplexMatrix a = u.leftCols(2) * diag({0.7, 0.3}) * u.leftCols(2).adjoint();
  const ComplexMatrix b = u.rightCols(2) * diag({0.4, 0.6}) * u.rightCols(2).adjoint();
  const std::vector<double> pri{0.35, 0.65};
  EXPECT_NEAR(holevo_chi(Ensemble(pri, {DensityMatrix(a), DensityMatrix(b)})), shannon_entropy(pri), 1e-12);
}

TEST(BuildJointState, SingleWord) {
  auto rng = random::make_engine(82);
  const auto rho = random::random_density(2, 2, rng);
  const Ensemble e({1.0}, {rho});
  const auto dil = measurement::naimark_dilate(Povm(random::random_povm_elements(2, 3, rng)));
  const auto joint = build_joint_state(e, dil);
  EXPECT_LT(max_abs(joint.matrix() - kron(rho.matrix(), basis_projector(3, 0))), 1e-15);
}

TEST(BuildJointState, ReducesToAverageAndIsValid) {
  for (int i = 0; i < 30; ++i) {
    const auto inst = sweep_instance(i);
    const auto& e = inst.ensemble();
    const auto dil = measurement::naimark_dilate(inst.povm());
    const auto joint = build_joint_state(e, dil);
    const std::vector<Index> dims{e.dim(), dil.probe_dim, static_cast<Index>(e.size())};
    const std::vector<Index> keep{0};
    EXPECT_LT(max_abs(partial_trace(joint.matrix(), dims, keep) - e.average_state().matrix()), 1e-14);
    EXPECT_NEAR(joint.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<ComplexMatrix>(joint.matrix()).eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(BuildObservables, SingleWordIsTrivial) {
  auto rng = random::make_engine(83);
  const CqChannelInstance inst(Ensemble({1.0}, {random::random_density(3, 2, rng)}), Povm(random::random_povm_elements(3, 2, rng)));
  const auto r = analyze(inst);
  EXPECT_NEAR(r.mean_delta_a, 0.0, 1e-10);
  EXPECT_NEAR(r.gamma, 1.0, 1e-10);
  EXPECT_NEAR(r.chi, 0.0, 1e-10);
  EXPECT_NEAR(r.mutual_information, 0.0, 1e-12);
  EXPECT_TRUE(r.passed());
}

TEST(BuildObservables, PerfectDiscriminationGivesSingleZeroAtom) {
  const auto r = analyze(orthogonal_binary());
  ASSERT_EQ(r.delta.atoms.size(), 1u);
  EXPECT_NEAR(r.delta.atoms[0].delta, 0.0, 1e-12);
  EXPECT_NEAR(r.delta.atoms[0].probability, 1.0, 1e-12);
}

TEST(BuildObservables, InitialFormCommutesWithJointState) {
  for (int i = 0; i < 20; ++i) {
    const auto inst = sweep_instance(i);
    const auto c = build_construction(inst.ensemble(), measurement::naimark_dilate(inst.povm()));
    EXPECT_LT(max_abs(c.initial_form * c.joint_state - c.joint_state * c.initial_form), 1e-10);
  }
}

TEST(Analyze, OrthogonalBinary) {
  const auto r = analyze(orthogonal_binary());
  EXPECT_NEAR(r.mutual_information, kLn2, 1e-12);
  EXPECT_NEAR(r.chi, kLn2, 1e-12);
  EXPECT_NEAR(r.gamma, 1.0, 1e-10);
  EXPECT_NEAR(r.bound_slack, 0.0, 1e-8);
  EXPECT_NEAR(r.chain.g1, 1.0, 1e-10);
  EXPECT_NEAR(r.chain.g2, 1.0, 1e-10);
  EXPECT_LT(r.equality_residual, 1e-8);
  EXPECT_TRUE(r.passed());
}

TEST(Analyze, WorkedExample) {
  const auto r = analyze(zero_plus());
  EXPECT_NEAR(r.mutual_information, kWorkedI, 1e-10);
  EXPECT_NEAR(r.chi, kWorkedChi, 1e-10);
  const double oracle = worked_gamma_oracle();
  EXPECT_NEAR(oracle, 0.8209620600110983, 1e-14);
  EXPECT_NEAR(r.gamma, oracle, 1e-8);
  EXPECT_NEAR(r.gamma_distribution, oracle, 1e-8);
  EXPECT_NEAR(r.neg_log_gamma, 0.19727838252065724, 1e-8);
  EXPECT_NEAR(r.chain.g1, 0.9308902198563684, 1e-8);
  EXPECT_GT(r.chi - r.mutual_information, 0.0);
  EXPECT_GE(r.neg_log_gamma, 0.0);
  EXPECT_LE(r.neg_log_gamma, r.chi - r.mutual_information);
  EXPECT_GT(r.equality_residual, 0.0);
  EXPECT_GT(r.bound_slack, 0.0);
  EXPECT_NEAR(r.mean_delta_a, r.chi - r.mutual_information, 1e-9);
  EXPECT_TRUE(r.passed());
}

TEST(Analyze, SweepInvariants) {
  for (int i = 0; i < 216; ++i) {
    const auto inst = sweep_instance(i);
    const auto r = analyze(inst);
    const double gap = r.chi - r.mutual_information;
    EXPECT_GE(gap - r.neg_log_gamma, -1e-8) << i;
    EXPECT_GE(r.neg_log_gamma, -1e-8) << i;
    EXPECT_LE(r.gamma, 1.0 + 1e-9) << i;
    EXPECT_LE(std::abs(r.gamma_distribution - r.gamma), 1e-8) << i;
    EXPECT_LE(std::abs(r.mean_delta_a_trace - gap), 1e-8) << i;
    EXPECT_LE(std::abs(r.mean_delta_a - gap), 1e-8) << i;
    EXPECT_LE(r.chain.gamma, r.chain.g1 + 1e-8) << i;
    EXPECT_LE(r.chain.g1, r.chain.g2 + 1e-8) << i;
    EXPECT_LE(std::abs(r.chain.g2 - 1.0), 1e-9) << i;
    EXPECT_LE(r.max_infinite_probability, 1e-12) << i;
    EXPECT_GE(r.chi, -1e-9) << i;
    EXPECT_TRUE(r.passed()) << i;
  }
}

TEST(Analyze, PriorPermutationCovariance) {
  for (int i = 0; i < 30; ++i) {
    const auto inst = random_instance(2 + i % 2, 3, 2 + i % 3, 500 + static_cast<std::uint64_t>(i), kind_for(i));
    const auto& e = inst.ensemble();
    std::vector<std::size_t> perm(e.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::vector<double> pri;
    std::vector<DensityMatrix> st;
    for (auto p : perm) {
      pri.push_back(e.priors()[p]);
      st.push_back(e.states()[p]);
    }
    const CqChannelInstance permuted(Ensemble(pri, st), inst.povm());
    const auto a = analyze(inst), b = analyze(permuted);
    EXPECT_NEAR(a.mutual_information, b.mutual_information, 1e-10);
    EXPECT_NEAR(a.chi, b.chi, 1e-10);
    EXPECT_NEAR(a.gamma, b.gamma, 1e-10);
  }
}

TEST(GtChain, PerfectDiscriminationIsTight) {
  const auto r = analyze(orthogonal_binary());
  EXPECT_NEAR(r.chain.gamma, 1.0, 1e-10);
  EXPECT_NEAR(r.chain.g1, 1.0, 1e-10);
  EXPECT_NEAR(r.chain.g2, 1.0, 1e-12);
}

TEST(GtChain, IdenticalStates) {
  const auto r = analyze(identical_states(3, 5));
  EXPECT_NEAR(r.chain.g1, 1.0, 1e-10);
  EXPECT_NEAR(r.gamma, 1.0, 1e-10);
}

TEST(GtChain, RandomQubitInstances) {
  for (int t = 0; t < 50; ++t) {
    const auto r = analyze(random_instance(2, 2 + t % 2, 2 + t % 3, 700 + static_cast<std::uint64_t>(t), kind_for(t)));
    EXPECT_LE(r.chain.gamma, r.chain.g1 + 1e-8);
    EXPECT_LE(r.chain.g1, r.chain.g2 + 1e-8);
    EXPECT_NEAR(r.chain.g2, 1.0, 1e-9);
  }
}

TEST(EqualityResidual, ForwardCases) {
  const auto orth = analyze(orthogonal_binary());
  EXPECT_LT(orth.equality_residual, 1e-8);
  EXPECT_LT(std::abs(orth.bound_slack), 1e-8);
  const auto same = analyze(identical_states(2, 6));
  EXPECT_LT(same.equality_residual, 1e-8);
  EXPECT_LT(std::abs(same.bound_slack), 1e-8);
  // orthogonal mixed states with a POVM that is coarser than the supports still saturates
  auto rng = random::make_engine(84);
  const ComplexMatrix u = random::random_unitary(4, rng);
  const ComplexMatrix pa = u.leftCols(2) * u.leftCols(2).adjoint(), pb = u.rightCols(2) * u.rightCols(2).adjoint();
  const CqChannelInstance blocks(Ensemble({0.4, 0.6}, {DensityMatrix(pa * 0.5), DensityMatrix(pb * 0.5)}), Povm({pa, pb}));
  const auto r = analyze(blocks);
  EXPECT_LT(r.equality_residual, 1e-8);
  EXPECT_LT(std::abs(r.bound_slack), 1e-8);
}

TEST(EqualityResidual, BackwardOnRandomInstances) {
  int slack_cases = 0;
  for (int i = 0; i < 216; ++i) {
    const auto r = analyze(sweep_instance(i));
    if (r.bound_slack > 1e-4) {
      ++slack_cases;
      EXPECT_GT(r.equality_residual, 1e-6) << i;
    }
  }
  EXPECT_GT(slack_cases, 50);
}

TEST(DilationInvariance, RandomizedDilationsAgree) {
  for (int i = 0; i < 20; ++i) {
    const auto inst = random_instance(2 + i % 2, 2, 2 + i % 3, 1200 + static_cast<std::uint64_t>(i), kind_for(i));
    const auto cmp = compare_dilations(inst, 3, 77 + static_cast<std::uint64_t>(i));
    EXPECT_EQ(cmp.trials, 3);
    EXPECT_LT(cmp.max_abs_difference, 1e-8) << i;
  }
}

TEST(RandomInstance, DeterministicAndValid) {
  for (auto kind : {StateKind::full_rank, StateKind::pure, StateKind::rank_deficient}) {
    const auto a = random_instance(3, 3, 4, 42, kind), b = random_instance(3, 3, 4, 42, kind);
    ASSERT_EQ(a.ensemble().size(), b.ensemble().size());
    double total = 0.0;
    for (std::size_t j = 0; j < a.ensemble().size(); ++j) {
      EXPECT_EQ(a.ensemble().priors()[j], b.ensemble().priors()[j]);
      EXPECT_EQ(max_abs(a.ensemble().states()[j].matrix() - b.ensemble().states()[j].matrix()), 0.0);
      total += a.ensemble().priors()[j];
      const auto& rho = a.ensemble().states()[j].matrix();
      EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
      EXPECT_GE(Eigen::SelfAdjointEigenSolver<ComplexMatrix>(rho).eigenvalues().minCoeff(), -1e-12);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
    for (std::size_t k = 0; k < a.povm().size(); ++k) {
      EXPECT_EQ(max_abs(a.povm().elements()[k].matrix() - b.povm().elements()[k].matrix()), 0.0);
      sum += a.povm().elements()[k].matrix();
    }
    EXPECT_LT(max_abs(sum - ComplexMatrix::Identity(3, 3)), 1e-10);
  }
  EXPECT_GT(max_abs(random_instance(2, 2, 2, 1).povm().elements()[0].matrix() -
                    random_instance(2, 2, 2, 2).povm().elements()[0].matrix()),
            1e-6);
}

TEST(RandomInstance, StateKinds) {
  const auto pure = random_instance(3, 2, 2, 5, StateKind::pure);
  for (const auto& s : pure.ensemble().states()) EXPECT_EQ(support_projector(s.as_hermitian()).rank(), 1);
  const auto deficient = random_instance(3, 2, 2, 5, StateKind::rank_deficient);
  for (const auto& s : deficient.ensemble().states()) EXPECT_LT(support_projector(s.as_hermitian()).rank(), 3);
}

TEST(RandomInstance, OneDimensionalEncodingCarriesNothing) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto r = analyze(random_instance(1, 3, 2, s));
    EXPECT_NEAR(r.chi, 0.0, 1e-12);
    EXPECT_NEAR(r.mutual_information, 0.0, 1e-12);
    EXPECT_NEAR(r.gamma, 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace holevoft::holevo
