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

#include "filterkey/filtration.hpp"

#include <string>

#include "filterkey/errors.hpp"
#include "filterkey/kernels.hpp"

namespace filterkey {

LocalFilter::LocalFilter(const std::array<double, 8>& params) : params_(params) {
  for (double v : params_)
    if (!(v >= kFilterFloor && v <= 1.0))
      throw DomainError("filter parameter " + std::to_string(v) +
                        " outside [1e-4, 1]");
}

LocalFilter LocalFilter::clamped(const std::array<double, 8>& params) {
  std::array<double, 8> c{};
  for (std::size_t i = 0; i < 8; ++i)
    c[i] = params[i] < kFilterFloor ? kFilterFloor
                                    : (params[i] > 1.0 ? 1.0 : params[i]);
  return LocalFilter(c);
}

LocalFilter LocalFilter::structured(double eps) {
  return LocalFilter({1.0, eps, eps, 1.0, 1.0, 1.0, 1.0, 1.0});
}

std::array<double, 4> LocalFilter::outer() const noexcept {
  return {params_[0], params_[1], params_[2], params_[3]};
}

std::array<double, 4> LocalFilter::inner() const noexcept {
  return {params_[4], params_[5], params_[6], params_[7]};
}

std::array<double, 16> LocalFilter::diagonal() const noexcept {
  std::array<double, 16> d{};
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t n = 0; n < 4; ++n) d[4 * m + n] = params_[m] * params_[4 + n];
  return d;
}

LocalFilter compose(const LocalFilter& f, const LocalFilter& g) {
  std::array<double, 8> c{};
  for (std::size_t i = 0; i < 8; ++i) c[i] = f.params_[i] * g.params_[i];
  return LocalFilter::clamped(c);
}

std::array<ShieldBlock, 4> filter_blocks(const LocalFilter& f) {
  const auto in = f.inner();
  const auto out = f.outer();
  std::array<ShieldBlock, 4> l;
  for (std::size_t m = 0; m < 4; ++m)
    l[m] = ShieldBlock(ComplexMatrix::diagonal(
        {out[m] * in[0], out[m] * in[1], out[m] * in[2], out[m] * in[3]}));
  return l;
}

ComplexMatrix full_filter_matrix(const LocalFilter& f) {
  const auto l = filter_blocks(f);
  ComplexMatrix full(16, 16);
  for (std::size_t m = 0; m < 4; ++m) full.set_block(4 * m, 4 * m, l[m].matrix());
  return full;
}

double success_probability(const DensityMatrix16& rho, const LocalFilter& f) {
  const auto d = f.diagonal();
  double p = 0.0;
  for (std::size_t i = 0; i < 16; ++i) p += d[i] * d[i] * rho.matrix()(i, i).real();
  return p;
}

FilteredState apply_filter(const DensityMatrix16& rho, const LocalFilter& f) {
  // Every L_m is diagonal, so L_m sigma^(m,n) L_n^dagger scales entry (i, j)
  // of the full matrix by diag(L)_i * diag(L)_j.
  const auto d = f.diagonal();
  ComplexMatrix num = rho.matrix();
  kernels::congruence_scale(num.data(), d, 16);
  const double tr = num.trace().real();
  if (!(tr >= kFilteredOutThreshold))
    throw FilteredOutError("filter success probability " + std::to_string(tr) +
                           " below threshold");
  num *= 1.0 / tr;
  return FilteredState{
      DensityMatrix16(HermitianMatrix::symmetrized(num), rho.ordering(),
                      rho.family(), rho.parameter()),
      tr, f};
}

}  // namespace filterkey
