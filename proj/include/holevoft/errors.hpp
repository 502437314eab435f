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

#include <stdexcept>
#include <string>

namespace holevoft {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input rejected by validation: malformed matrices, violated invariants,
/// inconsistent dimensions. The CLI maps this to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A two-time protocol assigns non-negligible probability to an outcome
/// whose value is +infinity.
class IllPosedError : public InputError {
 public:
  using InputError::InputError;
};

/// Two computation routes that must agree did not, or an internal
/// consistency check failed. Carries the values being compared.
class ConsistencyError : public Error {
 public:
  ConsistencyError(const std::string& what, double first, double second)
      : Error(what), first_(first), second_(second) {}
  explicit ConsistencyError(const std::string& what) : Error(what) {}

  double first() const noexcept { return first_; }
  double second() const noexcept { return second_; }

 private:
  double first_ = 0.0;
  double second_ = 0.0;
};

}  // namespace holevoft
