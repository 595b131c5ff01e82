// Copyright 2026 The filterkey Authors
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

namespace filterkey {

/// Input outside an operation's mathematical domain (out-of-range p,
/// negative probabilities).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Matrix shape violates the supported dimensions.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed argument: unknown subsystem label, non-Hermitian input, ...
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative numerical routine did not converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A filter annihilated the state: Tr(L rho L^dagger) below threshold.
class FilteredOutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace filterkey
