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

namespace holevoft {

/// Numerical tolerance pack shared by every module. All fields must be
/// strictly positive.
struct Tolerances {
  double hermiticity = 1e-10;
  double psd = 1e-10;
  double trace = 1e-10;
  double degeneracy = 1e-9;
  double rank = 1e-12;
  double proj = 1e-10;
  double ortho = 1e-10;
  double recon = 1e-10;
  double prob_floor = 1e-12;

  /// Throws InputError if any field is not strictly positive and finite.
  void validate() const;
};

}  // namespace holevoft
