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

#include "filterkey/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "filterkey/errors.hpp"

namespace filterkey {

namespace {

const double kSqrt2 = std::sqrt(2.0);

void require_domain(Family f, double p) {
  const FamilyDomain d = domain_of(f);
  if (!(d.contains(p)))
    throw DomainError("p = " + std::to_string(p) + " outside the " +
                      std::string(family_name(f)) + " domain [" +
                      std::to_string(d.p_min) + ", " + std::to_string(d.p_max) +
                      "]");
}

using BlockGrid = std::array<std::array<ShieldBlock, 4>, 4>;

DensityMatrix16 from_blocks(const BlockGrid& g, Family f, double p) {
  return DensityMatrix16(HermitianMatrix(assemble_blocks(g)), Ordering::kR1,
                         f, p);
}

}  // namespace

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::kFamily1: return "family1";
    case Family::kFamily2: return "family2";
    case Family::kFamily3: return "family3";
    case Family::kHorodecki: return "horodecki";
    case Family::kCustom: return "custom";
  }
  return "custom";
}

Family parse_family(std::string_view s) {
  if (s == "1" || s == "family1") return Family::kFamily1;
  if (s == "2" || s == "family2") return Family::kFamily2;
  if (s == "3" || s == "family3") return Family::kFamily3;
  if (s == "horodecki") return Family::kHorodecki;
  if (s == "custom") return Family::kCustom;
  throw ArgumentError("unknown family '" + std::string(s) + "'");
}

ShieldBlock::ShieldBlock(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != 4 || m_.cols() != 4)
    throw SizeError("shield block must be 4x4");
}

FamilyDomain domain_of(Family f) {
  switch (f) {
    case Family::kFamily1:
    case Family::kHorodecki:
      return {0.0, 0.5, f};
    case Family::kFamily2:
    case Family::kFamily3:
      return {0.125, kChiUpper, f};
    case Family::kCustom:
      break;
  }
  throw ArgumentError("custom states have no parameter domain");
}

std::vector<double> domain_grid(Family f, std::size_t n) {
  if (n < 2) throw ArgumentError("a grid needs at least two points");
  const FamilyDomain d = domain_of(f);
  std::vector<double> g(n);
  const double step = (d.p_max - d.p_min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = std::min(d.p_min + step * static_cast<double>(i), d.p_max);
  g.back() = d.p_max;
  return g;
}

DensityMatrix16::DensityMatrix16(HermitianMatrix m, Ordering ordering,
                                 Family family, double parameter)
    : m_(std::move(m)), ordering_(ordering), family_(family),
      parameter_(parameter) {
  if (m_.dim() != 16) throw SizeError("density matrix must be 16x16");
}

ShieldBlock DensityMatrix16::outer_block(std::size_t row, std::size_t col) const {
  return ShieldBlock(matrix().block(4 * row, 4 * col, 4, 4));
}

ComplexMatrix assemble_blocks(const BlockGrid& b) {
  ComplexMatrix m(16, 16);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m.set_block(4 * i, 4 * j, b[i][j].matrix());
  return m;
}

TauPair make_tau() {
  static const TauPair taus{
      ShieldBlock(ComplexMatrix::real({{1.0 / 6, 0, 0, 0},
                                       {0, 1.0 / 3, -1.0 / 6, 0},
                                       {0, -1.0 / 6, 1.0 / 3, 0},
                                       {0, 0, 0, 1.0 / 6}})),
      ShieldBlock(ComplexMatrix::real({{1.0 / 3, 0, 0, 0},
                                       {0, 1.0 / 6, 1.0 / 6, 0},
                                       {0, 1.0 / 6, 1.0 / 6, 0},
                                       {0, 0, 0, 1.0 / 3}}))};
  return taus;
}

ChiSigmas make_chi_sigmas(double p) {
  const double d = 1.0 - 4.0 * p - 2.0 * kSqrt2 * p;
  const double hi = (kSqrt2 + 1.0) * p;
  const double lo = (kSqrt2 - 1.0) * p;
  ChiSigmas s;
  s.s0 = 0.5 * ShieldBlock(ComplexMatrix::real(
                   {{p, 0, 0, p}, {0, 2 * p, 0, 0}, {0, 0, 0, 0}, {p, 0, 0, p}}));
  s.s1 = 0.5 * ShieldBlock(ComplexMatrix::real(
                   {{p, 0, 0, -p}, {0, 0, 0, 0}, {0, 0, 2 * p, 0}, {-p, 0, 0, p}}));
  s.s2 = 0.5 * ShieldBlock(ComplexMatrix::real(
                   {{d, 0, 0, 0}, {0, hi, p, 0}, {0, p, lo, 0}, {0, 0, 0, 0}}));
  s.s3 = 0.5 * ShieldBlock(ComplexMatrix::real(
                   {{d, 0, 0, 0}, {0, lo, -p, 0}, {0, -p, hi, 0}, {0, 0, 0, 0}}));
  return s;
}

ShieldBlock make_family3_sigma2(double p) {
  const double mid = p / kSqrt2;
  const double edge = 0.25 - (1.0 + 1.0 / kSqrt2) * p;
  return ShieldBlock(ComplexMatrix::diagonal({edge, mid, mid, edge}));
}

DensityMatrix16 make_family1(double p) {
  require_domain(Family::kFamily1, p);
  const auto [tau1, tau2] = make_tau();
  const double norm = 1.0 + 2.0 * p;
  const ShieldBlock corner = (2.0 * p / norm) * tau1;
  const ShieldBlock middle = ((0.5 - p) / norm) * tau2;
  const ShieldBlock zero;
  const BlockGrid g{{{corner, zero, zero, corner},
                     {zero, middle, zero, zero},
                     {zero, zero, middle, zero},
                     {corner, zero, zero, corner}}};
  return from_blocks(g, Family::kFamily1, p);
}

DensityMatrix16 make_family2(double p) {
  require_domain(Family::kFamily2, p);
  const ChiSigmas s = make_chi_sigmas(p);
  const ShieldBlock cp = 0.5 * (s.s0 + s.s1), cm = 0.5 * (s.s0 - s.s1);
  const ShieldBlock mp = 0.5 * (s.s2 + s.s3), mm = 0.5 * (s.s2 - s.s3);
  const ShieldBlock zero;
  const BlockGrid g{{{cp, zero, zero, cm},
                     {zero, mp, mm, zero},
                     {zero, mm, mp, zero},
                     {cm, zero, zero, cp}}};
  return from_blocks(g, Family::kFamily2, p);
}

DensityMatrix16 make_family3(double p) {
  require_domain(Family::kFamily3, p);
  const ChiSigmas s = make_chi_sigmas(p);
  const ShieldBlock cp = 0.5 * (s.s0 + s.s1), cm = 0.5 * (s.s0 - s.s1);
  const ShieldBlock mid = make_family3_sigma2(p);  // (1/2) * 2 sigma_2
  const ShieldBlock zero;
  const BlockGrid g{{{cp, zero, zero, cm},
                     {zero, mid, zero, zero},
                     {zero, zero, mid, zero},
                     {cm, zero, zero, cp}}};
  return from_blocks(g, Family::kFamily3, p);
}

DensityMatrix16 make_horodecki(double p) {
  require_domain(Family::kHorodecki, p);
  const auto [tau1, tau2] = make_tau();
  const ShieldBlock diag = (p / 2.0) * (tau1 + tau2);
  const ShieldBlock off = (p / 2.0) * (tau1 - tau2);
  const ShieldBlock middle = (0.5 - p) * tau2;
  const ShieldBlock zero;
  const BlockGrid g{{{diag, zero, zero, off},
                     {zero, middle, zero, zero},
                     {zero, zero, middle, zero},
                     {off, zero, zero, diag}}};
  return from_blocks(g, Family::kHorodecki, p);
}

DensityMatrix16 make_family(Family f, double p) {
  switch (f) {
    case Family::kFamily1: return make_family1(p);
    case Family::kFamily2: return make_family2(p);
    case Family::kFamily3: return make_family3(p);
    case Family::kHorodecki: return make_horodecki(p);
    case Family::kCustom: break;
  }
  throw ArgumentError("custom states have no constructor");
}

ComplexMatrix make_projector_a() {
  ComplexMatrix a(16, 16);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t outer = 0; outer < 4; ++outer)
      a(4 * outer + k, 4 * outer + k) = 0.5;
    a(k, 12 + k) = 0.5;
    a(12 + k, k) = 0.5;
  }
  return a;
}

double check_relation_family1(double p) {
  const DensityMatrix16 rho1 = make_family1(p);
  const DensityMatrix16 horo = make_horodecki(p);
  const ComplexMatrix a = make_projector_a();
  ComplexMatrix mapped = a * horo.matrix() * a.adjoint();
  const cplx tr = mapped.trace();
  mapped *= 1.0 / tr;
  return max_abs_diff(rho1.matrix(), mapped);
}

ValidationReport validate_state(const DensityMatrix16& s) {
  ValidationReport r{};
  r.trace_residual = std::abs(s.matrix().trace() - cplx{1.0, 0.0});
  r.hermiticity_residual = s.matrix().hermiticity_residual();
  r.min_eigenvalue = min_eigenvalue(s.hermitian());
  r.trace_ok = r.trace_residual <= kTraceTolerance;
  r.positive_ok = r.min_eigenvalue >= -kPsdTolerance;
  r.hermitian_ok = r.hermiticity_residual <= HermitianMatrix::kTolerance;
  return r;
}

ComplexMatrix bob_partial_transpose(const ComplexMatrix& m, Ordering o) {
  static constexpr std::array<Subsystem, 2> kBob{Subsystem::B, Subsystem::BPrime};
  return partial_transpose(m, o, kBob);
}

PptReport ppt_report(const DensityMatrix16& s) {
  PptReport r{};
  r.min_pt_eigenvalue_r1 = min_eigenvalue(
      HermitianMatrix(bob_partial_transpose(s.matrix(), Ordering::kR1)));
  r.min_pt_eigenvalue_r2 = min_eigenvalue(
      HermitianMatrix(bob_partial_transpose(s.matrix(), Ordering::kR2)));
  r.ppt_r1 = r.min_pt_eigenvalue_r1 >= -kPsdTolerance;
  r.ppt_r2 = r.min_pt_eigenvalue_r2 >= -kPsdTolerance;
  return r;
}

}  // namespace filterkey
