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

#include <cmath>

#include <gtest/gtest.h>

#include "holevoft/core.hpp"

namespace holevoft::testing {

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline ComplexMatrix diag(std::initializer_list<double> values) {
  RealVector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return v.cast<Complex>().asDiagonal();
}

inline ComplexVector ket(std::initializer_list<Complex> amps) {
  ComplexVector v(static_cast<Index>(amps.size()));
  Index i = 0;
  for (Complex a : amps) v(i++) = a;
  return v;
}

inline ComplexVector plus_ket() {
  return ket({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
}

inline ComplexMatrix outer(const ComplexVector& v) {
  return v * v.adjoint();
}

/// Binary entropy in nats.
inline double binary_entropy(double x) {
  return -x * std::log(x) - (1.0 - x) * std::log(1.0 - x);
}

}  // namespace holevoft::testing

#define EXPECT_MATRIX_NEAR(a, b, tol) EXPECT_LE(::holevoft::max_abs((a) - (b)), (tol))
