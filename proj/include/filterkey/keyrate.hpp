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

// One-way (Devetak-Winter) key rate of a privacy-squeezed four-qubit state.
//
// The block trace norms below already encode the best twisting of the
// shield, so K = 1 - S(E) is evaluated directly from four weights x, y, z, w
// without searching over twisting unitaries.

#pragma once

#include <array>
#include <string>
#include <string_view>

#include "filterkey/filtration.hpp"
#include "filterkey/states.hpp"

namespace filterkey {

/// sigma^{ijkl} = block at outer row (i,j), outer column (k,l).
struct BlockDecomposition {
  std::array<std::array<ShieldBlock, 4>, 4> blocks;

  /// Bits i, j, k, l are each 0 or 1.
  const ShieldBlock& at(int i, int j, int k, int l) const {
    return blocks[static_cast<std::size_t>(2 * i + j)]
                 [static_cast<std::size_t>(2 * k + l)];
  }
  ComplexMatrix reassemble() const { return assemble_blocks(blocks); }
};

BlockDecomposition decompose_blocks(const DensityMatrix16& rho);
BlockDecomposition decompose_blocks(const ComplexMatrix& m);

struct XyzwParameters {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 0.0;

  double sum() const noexcept { return x + y + z + w; }
  std::array<double, 4> as_array() const noexcept { return {x, y, z, w}; }
};

enum class KeyRatePath {
  kGeneric,
  kClosedFormFamily1,
  kClosedFormFamily2,
  kClosedFormFamily3,
};

std::string_view path_name(KeyRatePath p) noexcept;

struct KeyRateReport {
  XyzwParameters params;
  double entropy = 0.0;
  double kdw = 0.0;
  KeyRatePath path = KeyRatePath::kGeneric;
  /// Free-form provenance, e.g. "w-term typo-corrected".
  std::string note;
};

/// Values in [-1e-12, 0) are snapped to zero.
XyzwParameters xyzw(const BlockDecomposition& b);
KeyRateReport kdw_from_xyzw(const XyzwParameters& p,
                            KeyRatePath path = KeyRatePath::kGeneric);
/// decompose_blocks -> xyzw -> kdw_from_xyzw. A lower bound on K_D.
KeyRateReport kdw_of_state(const DensityMatrix16& rho);

struct FilteredKeyRate {
  XyzwParameters params;
  double kdw;
  double success_probability;
};

/// Equals kdw_of_state(apply_filter(rho, f)) together with the success
/// probability, but reads only the six blocks the weights depend on and
/// never materializes the filtered state. Throws FilteredOutError like
/// apply_filter.
FilteredKeyRate filtered_kdw(const DensityMatrix16& rho, const LocalFilter& f);

/// Unfiltered closed forms, valid on the family's domain.
XyzwParameters family1_closed_form_xyzw(double p);
/// The w weight uses (1 - 4p - 2 sqrt(2) p) / 2; the variant without the
/// factor p on the sqrt(2) term is negative on the whole domain and breaks
/// x + y + z + w = 1.
XyzwParameters family2_closed_form_xyzw(double p);
XyzwParameters family3_closed_form_xyzw(double p);

/// Closed-form K for family 2. Throws DomainError outside its domain.
double kdw_family2_closed_form(double p);
/// Same value through kdw_from_xyzw, tagged closed-form-family2 and noted
/// as "w-term typo-corrected".
KeyRateReport kdw_family2_closed_form_report(double p);

/// x, y, z, w rebuilt from the per-family post-filtration block formulas
/// (L_m X L_n^dagger with X the printed family pieces) instead of from the
/// filtered 16x16 matrix. Families 1-3 only; ArgumentError otherwise.
KeyRateReport kdw_family_display(Family family, double p, const LocalFilter& f);

struct PbitConditionReport {
  double norm_0000;
  double norm_0011;
  double norm_1111;
  double norm_0101;
  double norm_1010;
  bool holds;
};

/// ||s0000|| = ||s0011|| = ||s1111|| (to 1e-10) and both ||s0101|| and
/// ||s1010|| strictly below ||s0011||.
PbitConditionReport pbit_sufficient_condition(const BlockDecomposition& b);

struct BellDiagonalConditionReport {
  double difference_norm;  // ||s0 - s1||
  double overlap;          // Tr(s0 s1)
  bool holds;
};

/// ||s0 - s1|| > 1/2 and |Tr(s0 s1)| <= 1e-12.
BellDiagonalConditionReport belldiag_condition(const ShieldBlock& s0,
                                               const ShieldBlock& s1);

}  // namespace filterkey
