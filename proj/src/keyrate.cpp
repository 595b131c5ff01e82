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

#include "filterkey/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "filterkey/errors.hpp"

namespace filterkey {

namespace {

const double kSqrt2 = std::sqrt(2.0);

double snap(double v) { return (v < 0.0 && v >= -1e-12) ? 0.0 : v; }

XyzwParameters weights(double n0000, double n1111, double n0011, double n0101,
                       double n1010, double n0110) {
  const double corner = 0.5 * (n0000 + n1111);
  const double middle = 0.5 * (n0101 + n1010);
  return {snap(corner + n0011), snap(corner - n0011), snap(middle + n0110),
          snap(middle - n0110)};
}

double norm_of(const ShieldBlock& b) { return trace_norm(b.matrix()); }

}  // namespace

std::string_view path_name(KeyRatePath p) noexcept {
  switch (p) {
    case KeyRatePath::kGeneric: return "generic";
    case KeyRatePath::kClosedFormFamily1: return "closed-form-family1";
    case KeyRatePath::kClosedFormFamily2: return "closed-form-family2";
    case KeyRatePath::kClosedFormFamily3: return "closed-form-family3";
  }
  return "generic";
}

BlockDecomposition decompose_blocks(const ComplexMatrix& m) {
  if (m.rows() != 16 || m.cols() != 16)
    throw SizeError("block decomposition expects a 16x16 operator");
  BlockDecomposition b;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      b.blocks[r][c] = ShieldBlock(m.block(4 * r, 4 * c, 4, 4));
  return b;
}

BlockDecomposition decompose_blocks(const DensityMatrix16& rho) {
  return decompose_blocks(rho.matrix());
}

XyzwParameters xyzw(const BlockDecomposition& b) {
  return weights(norm_of(b.at(0, 0, 0, 0)), norm_of(b.at(1, 1, 1, 1)),
                 norm_of(b.at(0, 0, 1, 1)), norm_of(b.at(0, 1, 0, 1)),
                 norm_of(b.at(1, 0, 1, 0)), norm_of(b.at(0, 1, 1, 0)));
}

KeyRateReport kdw_from_xyzw(const XyzwParameters& p, KeyRatePath path) {
  KeyRateReport r;
  r.params = p;
  const auto v = p.as_array();
  r.entropy = shannon_entropy_bits(v);
  r.kdw = 1.0 - r.entropy;
  r.path = path;
  return r;
}

KeyRateReport kdw_of_state(const DensityMatrix16& rho) {
  return kdw_from_xyzw(xyzw(decompose_blocks(rho)));
}

FilteredKeyRate filtered_kdw(const DensityMatrix16& rho, const LocalFilter& f) {
  const auto d = f.diagonal();
  const ComplexMatrix& m = rho.matrix();
  double prob = 0.0;
  for (std::size_t i = 0; i < 16; ++i) prob += d[i] * d[i] * m(i, i).real();
  if (!(prob >= kFilteredOutThreshold))
    throw FilteredOutError("filter success probability " + std::to_string(prob) +
                           " below threshold");
  const double inv = 1.0 / prob;

  auto block_norm = [&](std::size_t r, std::size_t c) {
    std::array<cplx, 16> b;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        b[i * 4 + j] = m(4 * r + i, 4 * c + j) * (d[4 * r + i] * d[4 * c + j] * inv);
    double herm = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j)
        herm = std::max(herm, std::abs(b[i * 4 + j] - std::conj(b[j * 4 + i])));
    if (herm > HermitianMatrix::kTolerance)
      return trace_norm(ComplexMatrix(4, 4, std::vector<cplx>(b.begin(), b.end())));
    double s = 0.0;
    for (double l : hermitian_eigenvalues4(b)) s += std::abs(l);
    return s;
  };

  FilteredKeyRate out;
  out.params = weights(block_norm(0, 0), block_norm(3, 3), block_norm(0, 3),
                       block_norm(1, 1), block_norm(2, 2), block_norm(1, 2));
  out.kdw = kdw_from_xyzw(out.params).kdw;
  out.success_probability = prob;
  return out;
}

XyzwParameters family1_closed_form_xyzw(double p) {
  const double z = std::abs((-1.0 + 2.0 * p) / (1.0 + 2.0 * p)) / 2.0;
  return {4.0 * std::abs(p / (1.0 + 2.0 * p)), 0.0, z, z};
}

XyzwParameters family2_closed_form_xyzw(double p) {
  return {4.0 * p, 0.0, (1.0 - 4.0 * p + 2.0 * kSqrt2 * p) / 2.0,
          snap((1.0 - 4.0 * p - 2.0 * kSqrt2 * p) / 2.0)};
}

XyzwParameters family3_closed_form_xyzw(double p) {
  const double z = (1.0 - 4.0 * p) / 2.0;
  return {4.0 * p, 0.0, z, z};
}

double kdw_family2_closed_form(double p) {
  if (!domain_of(Family::kFamily2).contains(p))
    throw DomainError("p = " + std::to_string(p) + " outside the family2 domain");
  const XyzwParameters q = family2_closed_form_xyzw(p);
  // 1 + x log2 x + z log2 z + w log2 w, with y = 0.
  auto term = [](double v) { return v > 0.0 ? v * std::log2(v) : 0.0; };
  return 1.0 + term(q.x) + term(q.w) + term(q.z);
}

KeyRateReport kdw_family2_closed_form_report(double p) {
  if (!domain_of(Family::kFamily2).contains(p))
    throw DomainError("p = " + std::to_string(p) + " outside the family2 domain");
  KeyRateReport r =
      kdw_from_xyzw(family2_closed_form_xyzw(p), KeyRatePath::kClosedFormFamily2);
  r.note = "w-term typo-corrected";
  return r;
}

KeyRateReport kdw_family_display(Family family, double p, const LocalFilter& f) {
  const auto l = filter_blocks(f);
  auto sandwich = [&](std::size_t m, const ShieldBlock& x, std::size_t n) {
    return l[m].matrix() * x.matrix() * l[n].matrix().adjoint();
  };
  auto tn = [](const ComplexMatrix& m) { return trace_norm(m); };
  auto tr = [](const ComplexMatrix& m) { return m.trace().real(); };

  switch (family) {
    case Family::kFamily1: {
      if (!domain_of(family).contains(p)) throw DomainError("p outside family1 domain");
      const auto [tau1, tau2] = make_tau();
      const ShieldBlock corner = (2.0 * p) * tau1;
      const ShieldBlock middle = (0.5 - p) * tau2;
      const ComplexMatrix c11 = sandwich(0, corner, 0), c44 = sandwich(3, corner, 3),
                          c14 = sandwich(0, corner, 3);
      const ComplexMatrix m22 = sandwich(1, middle, 1), m33 = sandwich(2, middle, 2);
      const double m_trace = (tr(c11) + tr(c44) + tr(m22) + tr(m33)) / (1.0 + 2.0 * p);
      const double denom = (1.0 + 2.0 * p) * m_trace;
      const double half_corner = (tn(c11) / denom + tn(c44) / denom) / 2.0;
      const double off = tn(c14) / denom;
      const double zw = (tn(m22) / denom + tn(m33) / denom) / 2.0;
      return kdw_from_xyzw({half_corner + off, snap(half_corner - off), zw, zw},
                           KeyRatePath::kClosedFormFamily1);
    }
    case Family::kFamily2:
    case Family::kFamily3: {
      if (!domain_of(family).contains(p))
        throw DomainError("p outside " + std::string(family_name(family)) + " domain");
      const ChiSigmas s = make_chi_sigmas(p);
      const ShieldBlock plus = s.s0 + s.s1, minus = s.s0 - s.s1;
      const ComplexMatrix c11 = sandwich(0, plus, 0), c44 = sandwich(3, plus, 3),
                          c14 = sandwich(0, minus, 3);
      ComplexMatrix m22, m33, m23(4, 4);
      if (family == Family::kFamily2) {
        const ShieldBlock mplus = s.s2 + s.s3, mminus = s.s2 - s.s3;
        m22 = sandwich(1, mplus, 1);
        m33 = sandwich(2, mplus, 2);
        m23 = sandwich(1, mminus, 2);
      } else {
        const ShieldBlock two_sigma2 = 2.0 * make_family3_sigma2(p);
        m22 = sandwich(1, two_sigma2, 1);
        m33 = sandwich(2, two_sigma2, 2);
      }
      const double m_trace = (tr(c11) + tr(c44) + tr(m22) + tr(m33)) / 2.0;
      const double denom = 2.0 * m_trace;
      const double half_corner = (tn(c11) / denom + tn(c44) / denom) / 2.0;
      const double off = tn(c14) / denom;
      const double half_middle = (tn(m22) / denom + tn(m33) / denom) / 2.0;
      const double coh = family == Family::kFamily2 ? tn(m23) / denom : 0.0;
      KeyRateReport r = kdw_from_xyzw(
          {half_corner + off, snap(half_corner - off), half_middle + coh,
           snap(half_middle - coh)},
          family == Family::kFamily2 ? KeyRatePath::kClosedFormFamily2
                                     : KeyRatePath::kClosedFormFamily3);
      return r;
    }
    case Family::kHorodecki:
    case Family::kCustom:
      break;
  }
  throw ArgumentError("no post-filtration display for " +
                      std::string(family_name(family)));
}

PbitConditionReport pbit_sufficient_condition(const BlockDecomposition& b) {
  PbitConditionReport r{};
  r.norm_0000 = norm_of(b.at(0, 0, 0, 0));
  r.norm_0011 = norm_of(b.at(0, 0, 1, 1));
  r.norm_1111 = norm_of(b.at(1, 1, 1, 1));
  r.norm_0101 = norm_of(b.at(0, 1, 0, 1));
  r.norm_1010 = norm_of(b.at(1, 0, 1, 0));
  constexpr double kEq = 1e-10;
  const bool equal = std::abs(r.norm_0000 - r.norm_0011) <= kEq &&
                     std::abs(r.norm_1111 - r.norm_0011) <= kEq &&
                     std::abs(r.norm_0000 - r.norm_1111) <= kEq;
  r.holds = equal && r.norm_0101 < r.norm_0011 && r.norm_1010 < r.norm_0011;
  return r;
}

BellDiagonalConditionReport belldiag_condition(const ShieldBlock& s0,
                                               const ShieldBlock& s1) {
  BellDiagonalConditionReport r{};
  r.difference_norm = trace_norm((s0 - s1).matrix());
  r.overlap = (s0.matrix() * s1.matrix()).trace().real();
  r.holds = r.difference_norm > 0.5 && std::abs(r.overlap) <= 1e-12;
  return r;
}

}  // namespace filterkey
