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

#include <cmath>

#include <gtest/gtest.h>

#include "holevoft/holevo.hpp"
#include "holevoft/optimize.hpp"
#include "holevoft/random.hpp"
#include "test_util.hpp"

namespace holevoft::holevo {
namespace {

using testing::diag;

OptimizerConfig small_config(std::uint64_t seed, int iterations = 600) {
  OptimizerConfig c;
  c.restarts = 4;
  c.iterations = iterations;
  c.seed = seed;
  return c;
}

TEST(Optimize, OrthogonalBinaryReachesLn2) {
  const Ensemble e({0.5, 0.5}, {DensityMatrix(diag({1, 0})), DensityMatrix(diag({0, 1}))});
  const auto r = optimize_measurement(e, 2, small_config(1));
  EXPECT_GE(r.information, std::log(2.0) - 1e-6);
  EXPECT_NEAR(mutual_information(CqChannelInstance(e, r.povm)), r.information, 1e-12);
}

TEST(Optimize, IdenticalStatesGiveNothing) {
  auto rng = random::make_engine(91);
  const auto rho = random::random_density(2, 2, rng);
  const Ensemble e({0.3, 0.7}, {rho, rho});
  for (Index k : {2, 3, 4}) EXPECT_LE(optimize_measurement(e, k, small_config(2, 200)).information, 1e-9);
}

TEST(Optimize, ZeroPlusBeatsZBasisAndStaysBelowChi) {
  const Ensemble e({0.5, 0.5}, {DensityMatrix(diag({1, 0})), DensityMatrix::pure(testing::plus_ket())});
  const double z_info = 0.5 * std::log(4.0 / 3) + 0.25 * std::log(2.0 / 3) + 0.25 * std::log(2.0);
  const auto r = optimize_measurement(e, 2, small_config(3));
  EXPECT_GE(r.information, z_info);
  EXPECT_LE(r.information, holevo_chi(e) + 1e-8);
  // the symmetric basis about the bisector is optimal for two pure states: I = ln2 − h((1+sin(π/4))/2)
  const double p = (1 + std::sin(M_PI / 4)) / 2;
  EXPECT_NEAR(r.information, std::log(2.0) - testing::binary_entropy(p), 1e-6);
}

TEST(Optimize, NeverWorseThanBestStart) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto inst = random_instance(3, 3, 3, 40 + s);
    const auto r = optimize_measurement(inst.ensemble(), 3, small_config(s, 150));
    EXPECT_GE(r.information, r.best_initial_information - 1e-12);
    EXPECT_EQ(r.restart_information.size(), 4u);
    for (double v : r.restart_information) EXPECT_LE(v, r.information);
  }
}

TEST(Optimize, DeterministicAndMonotoneInIterations) {
  const Ensemble e({0.5, 0.5}, {DensityMatrix(diag({1, 0})), DensityMatrix::pure(testing::plus_ket())});
  const auto a = optimize_measurement(e, 2, small_config(9, 100));
  const auto b = optimize_measurement(e, 2, small_config(9, 100));
  EXPECT_EQ(a.information, b.information);
  double previous = -1.0;
  for (int iters : {0, 10, 50, 200, 800}) {
    const double info = optimize_measurement(e, 2, small_config(9, iters)).information;
    EXPECT_GE(info, previous);
    previous = info;
  }
}

TEST(Optimize, ReturnedPovmIsValid) {
  const auto inst = random_instance(3, 2, 4, 17);
  const auto r = optimize_measurement(inst.ensemble(), 4, small_config(5, 100));
  ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
  for (const auto& m : r.povm.elements()) {
    sum += m.matrix();
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<ComplexMatrix>(m.matrix()).eigenvalues().minCoeff(), -1e-10);
  }
  EXPECT_LT(max_abs(sum - ComplexMatrix::Identity(3, 3)), 1e-10);
}

TEST(Optimize, RejectsTooFewOutcomes) {
  const Ensemble e({1.0}, {DensityMatrix::maximally_mixed(2)});
  EXPECT_THROW(optimize_measurement(e, 1), InputError);
}

}  // namespace
}  // namespace holevoft::holevo
