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

// Diagonal local filters L = diag(a,b,c,d) (x) diag(r,s,t,u).

#pragma once

#include <array>

#include "filterkey/qmat.hpp"
#include "filterkey/states.hpp"

namespace filterkey {

/// Eight filter parameters, each in [kFilterFloor, 1]. The first four act
/// on the outer block index, the last four on the inner (shield) index.
class LocalFilter {
 public:
  static constexpr double kFilterFloor = 1e-4;

  /// All-ones filter.
  LocalFilter() { params_.fill(1.0); }
  /// Throws DomainError if any parameter leaves [kFilterFloor, 1].
  explicit LocalFilter(const std::array<double, 8>& params);
  /// Clamps each parameter into [kFilterFloor, 1].
  static LocalFilter clamped(const std::array<double, 8>& params);
  static LocalFilter identity() { return LocalFilter(); }
  /// a = d = r = s = t = u = 1, b = c = eps.
  static LocalFilter structured(double eps);

  const std::array<double, 8>& params() const noexcept { return params_; }
  std::array<double, 4> outer() const noexcept;
  std::array<double, 4> inner() const noexcept;
  /// Diagonal of the full 16x16 filter: outer[m] * inner[n] at 4m + n.
  std::array<double, 16> diagonal() const noexcept;

  /// Entrywise product; the filter equivalent of applying g after f.
  friend LocalFilter compose(const LocalFilter& f, const LocalFilter& g);
  friend bool operator==(const LocalFilter&, const LocalFilter&) = default;

 private:
  std::array<double, 8> params_;
};

/// L1..L4: L_m = outer[m] * diag(r, s, t, u).
std::array<ShieldBlock, 4> filter_blocks(const LocalFilter& f);

/// diag(L1, L2, L3, L4) assembled block by block.
ComplexMatrix full_filter_matrix(const LocalFilter& f);

struct FilteredState {
  DensityMatrix16 state;
  double success_probability;
  LocalFilter source_filter;
};

/// Tr(L rho L^dagger) below this is treated as the ensemble being discarded.
inline constexpr double kFilteredOutThreshold = 1e-12;

/// L rho L^dagger / Tr(L rho L^dagger). Block (m, n) of the numerator is
/// L_m sigma^(m,n) L_n^dagger. Throws FilteredOutError when the trace falls
/// below kFilteredOutThreshold.
FilteredState apply_filter(const DensityMatrix16& rho, const LocalFilter& f);

/// Tr(L rho L^dagger).
double success_probability(const DensityMatrix16& rho, const LocalFilter& f);

}  // namespace filterkey
