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

// Four-qubit (key pair + shield) state families and their auxiliary blocks.
//
// All constructors lay states out in ordering R1: row index
// 8*i_A + 4*j_B + 2*k_A' + l_B', so the outer 4x4 grid of 4x4 blocks is
// indexed by the key pair AB.

#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "filterkey/qmat.hpp"

namespace filterkey {

enum class Family { kFamily1, kFamily2, kFamily3, kHorodecki, kCustom };

std::string_view family_name(Family f) noexcept;
/// Accepts "family1".."family3", "horodecki", "custom" and the bare digits
/// "1", "2", "3". Throws ArgumentError otherwise.
Family parse_family(std::string_view s);

/// A 4x4 operator on the shield pair A'B'.
class ShieldBlock {
 public:
  ShieldBlock() : m_(4, 4) {}
  /// Throws SizeError unless m is 4x4.
  explicit ShieldBlock(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  cplx operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }

  friend ShieldBlock operator+(const ShieldBlock& a, const ShieldBlock& b) {
    return ShieldBlock(a.m_ + b.m_);
  }
  friend ShieldBlock operator-(const ShieldBlock& a, const ShieldBlock& b) {
    return ShieldBlock(a.m_ - b.m_);
  }
  friend ShieldBlock operator*(double s, const ShieldBlock& a) {
    return ShieldBlock(cplx(s) * a.m_);
  }

 private:
  ComplexMatrix m_;
};

/// Closed parameter interval on which a family is defined.
struct FamilyDomain {
  double p_min;
  double p_max;
  Family family;

  bool contains(double p) const noexcept { return p >= p_min && p <= p_max; }
};

/// 1 / (4 + 2 sqrt 2), the upper end of the family 2 and 3 domains.
inline constexpr double kChiUpper = 0.14644660940672624;

FamilyDomain domain_of(Family f);
/// n >= 2 evenly spaced points over the closed domain; both endpoints exact.
std::vector<double> domain_grid(Family f, std::size_t n);

/// A 16x16 density operator plus the bookkeeping needed to interpret it.
/// Construction only requires a Hermitian 16x16 matrix; positivity and
/// normalization are checked by validate_state.
class DensityMatrix16 {
 public:
  DensityMatrix16(HermitianMatrix m, Ordering ordering, Family family,
                  double parameter);

  const HermitianMatrix& hermitian() const noexcept { return m_; }
  const ComplexMatrix& matrix() const noexcept { return m_.matrix(); }
  Ordering ordering() const noexcept { return ordering_; }
  Family family() const noexcept { return family_; }
  double parameter() const noexcept { return parameter_; }

  /// 4x4 block at outer row `row`, outer column `col` (each 0..3).
  ShieldBlock outer_block(std::size_t row, std::size_t col) const;

 private:
  HermitianMatrix m_;
  Ordering ordering_;
  Family family_;
  double parameter_;
};

/// Builds a 16x16 matrix from a 4x4 grid of shield blocks.
ComplexMatrix assemble_blocks(const std::array<std::array<ShieldBlock, 4>, 4>& b);

struct TauPair {
  ShieldBlock tau1;
  ShieldBlock tau2;
};
TauPair make_tau();

/// sigma_0..sigma_3 as used by family 2.
struct ChiSigmas {
  ShieldBlock s0, s1, s2, s3;
};
ChiSigmas make_chi_sigmas(double p);
/// The diagonal sigma_2 used by family 3.
ShieldBlock make_family3_sigma2(double p);

// Each constructor throws DomainError for p outside domain_of(family).
DensityMatrix16 make_family1(double p);
DensityMatrix16 make_family2(double p);
DensityMatrix16 make_family3(double p);
DensityMatrix16 make_horodecki(double p);
DensityMatrix16 make_family(Family f, double p);

/// (1/2) [[I,0,0,I],[0,I,0,0],[0,0,I,0],[I,0,0,I]] with 4x4 identity blocks.
ComplexMatrix make_projector_a();

/// max entrywise |rho1_p - A rho_(p,2,1) A^dagger / Tr(...)|.
double check_relation_family1(double p);

struct ValidationReport {
  double trace_residual;
  double min_eigenvalue;
  double hermiticity_residual;
  bool trace_ok;
  bool positive_ok;
  bool hermitian_ok;

  bool valid() const noexcept { return trace_ok && positive_ok && hermitian_ok; }
};

inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

ValidationReport validate_state(const DensityMatrix16& s);

struct PptReport {
  /// Minimum eigenvalue of the partial transpose over {B, B'} when the
  /// matrix is read with ordering R1 and with ordering R2.
  double min_pt_eigenvalue_r1;
  double min_pt_eigenvalue_r2;
  bool ppt_r1;
  bool ppt_r2;
};

PptReport ppt_report(const DensityMatrix16& s);
/// Partial transpose over {B, B'} under the given reading of the indices.
ComplexMatrix bob_partial_transpose(const ComplexMatrix& m, Ordering o);

}  // namespace filterkey
