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

#include "holevoft/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holevoft/random.hpp"

namespace holevoft::holevo {

namespace {

struct Candidate {
  std::vector<ComplexMatrix> factors;
  double information = -std::numeric_limits<double>::infinity();
};

double information_of(const Ensemble& e, const std::vector<ComplexMatrix>& factors, double prob_floor) {
  const auto elements = random::povm_from_factors(factors);
  Eigen::MatrixXd c(static_cast<Index>(e.size()), static_cast<Index>(elements.size()));
  for (std::size_t j = 0; j < e.size(); ++j)
    for (std::size_t k = 0; k < elements.size(); ++k)
      c(static_cast<Index>(j), static_cast<Index>(k)) =
          std::max(0.0, (e.states()[j].matrix() * elements[k]).trace().real());
  const double info = mutual_information(c, e.priors(), prob_floor);
  return std::isfinite(info) ? info : -std::numeric_limits<double>::infinity();
}

double factor_norm(const std::vector<ComplexMatrix>& factors) {
  double s = 0.0;
  for (const auto& b : factors) s += b.squaredNorm();
  return std::sqrt(s);
}

}  // namespace

OptimizationResult optimize_measurement(const Ensemble& e, Index outcomes, const OptimizerConfig& config,
                                        const Tolerances& tol) {
  if (outcomes < 2) throw InputError("optimize_measurement needs at least two outcomes");
  if (config.restarts < 1 || config.iterations < 0) throw InputError("optimizer needs at least one restart and a non-negative budget");
  const Index d = e.dim();

  Candidate best;
  double best_initial = -std::numeric_limits<double>::infinity();
  std::vector<double> per_restart;
  long evaluations = 0;

  for (int r = 0; r < config.restarts; ++r) {
    auto rng = random::make_engine(config.seed, static_cast<std::uint64_t>(r));
    Candidate cur;
    for (Index k = 0; k < outcomes; ++k) cur.factors.push_back(random::ginibre(d, d, rng));
    cur.information = information_of(e, cur.factors, tol.prob_floor);
    ++evaluations;
    best_initial = std::max(best_initial, cur.information);

    double step = config.initial_step;
    for (int it = 0; it < config.iterations && step >= config.min_step; ++it) {
      const double scale = step * factor_norm(cur.factors) / std::sqrt(static_cast<double>(outcomes * d * d));
      std::vector<ComplexMatrix> trial = cur.factors;
      for (auto& b : trial) b += scale * random::ginibre(d, d, rng);
      const double info = information_of(e, trial, tol.prob_floor);
      ++evaluations;
      if (info > cur.information) {
        cur.factors = std::move(trial);
        cur.information = info;
        step = std::min(step * config.step_growth, 4.0);
      } else {
        step *= config.step_decay;
      }
    }
    per_restart.push_back(cur.information);
    if (cur.information > best.information) best = std::move(cur);
  }

  return OptimizationResult{Povm(random::povm_from_factors(best.factors), tol), best.information, best_initial,
                            std::move(per_restart), evaluations};
}

}  // namespace holevoft::holevo
