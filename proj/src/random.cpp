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

#include "holevoft/random.hpp"

#include <cmath>

namespace holevoft::random {

Engine make_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Engine(seq);
}

ComplexMatrix ginibre(Index rows, Index cols, Engine& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  // column-major fill order is part of the determinism contract
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

HermitianOperator random_hermitian(Index dim, Engine& rng, double scale) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  return HermitianOperator(scale * (g + g.adjoint()) / 2.0);
}

ComplexMatrix random_unitary(Index dim, Engine& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    if (a > 0.0) q.col(i) *= d / a;
  }
  return q;
}

DensityMatrix random_density(Index dim, Index rank, Engine& rng) {
  const ComplexMatrix g = ginibre(dim, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

DensityMatrix random_pure_state(Index dim, Engine& rng) {
  const ComplexMatrix g = ginibre(dim, 1, rng);
  return DensityMatrix::pure(g.col(0));
}

std::vector<double> random_simplex(Index n, Engine& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& x : w) {
    x = expo(rng);
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

HermitianOperator random_degenerate_hermitian(Index dim, const std::vector<double>& levels, Engine& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, levels.size() - 1);
  RealVector diag(dim);
  for (Index i = 0; i < dim; ++i) diag(i) = levels[pick(rng)];
  const ComplexMatrix u = random_unitary(dim, rng);
  return HermitianOperator(u * diag.cast<Complex>().asDiagonal() * u.adjoint());
}

std::vector<ComplexMatrix> povm_from_factors(const std::vector<ComplexMatrix>& factors) {
  const Index dim = factors.front().cols();
  ComplexMatrix t = ComplexMatrix::Zero(dim, dim);
  for (const auto& b : factors) t += b.adjoint() * b;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((t + t.adjoint()) / 2.0);
  const RealVector inv_sqrt = es.eigenvalues().array().rsqrt();
  const ComplexMatrix t_inv_half = es.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  std::vector<ComplexMatrix> out;
  out.reserve(factors.size());
  for (const auto& b : factors) {
    ComplexMatrix m = t_inv_half * b.adjoint() * b * t_inv_half;
    out.push_back((m + m.adjoint()) / 2.0);
  }
  return out;
}

std::vector<ComplexMatrix> random_povm_elements(Index dim, Index outcomes, Engine& rng) {
  std::vector<ComplexMatrix> factors;
  factors.reserve(static_cast<std::size_t>(outcomes));
  for (Index k = 0; k < outcomes; ++k) factors.push_back(ginibre(dim, dim, rng));
  return povm_from_factors(factors);
}

}  // namespace holevoft::random
