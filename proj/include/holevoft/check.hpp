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

#include <string>
#include <vector>

namespace holevoft {

/// One named assertion. `violation` is how far the asserted relation is from
/// failing in the bad direction (|a − b| for identities, b − a for a ≥ b);
/// the check passes iff violation ≤ tolerance.
struct Check {
  std::string name;
  double violation;
  double tolerance;
  bool passed;
};

inline Check make_check(std::string name, double violation, double tolerance) {
  return Check{std::move(name), violation, tolerance, violation <= tolerance};
}

inline bool all_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

}  // namespace holevoft
