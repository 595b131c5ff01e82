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

#include "filterkey/kernels.hpp"

namespace filterkey::kernels::scalar {

void congruence_scale(std::span<cplx> m, std::span<const double> d,
                      std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double di = d[i];
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] *= di * d[j];
  }
}

void gram(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<cplx> out) {
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t k = 0; k < cols; ++k) {
      cplx acc{0.0, 0.0};
      for (std::size_t i = 0; i < rows; ++i)
        acc += std::conj(a[i * cols + j]) * a[i * cols + k];
      out[j * cols + k] = acc;
    }
  }
}

void rotate_rows(std::span<cplx> row_p, std::span<cplx> row_q, cplx u00,
                 cplx u01, cplx u10, cplx u11) {
  for (std::size_t j = 0; j < row_p.size(); ++j) {
    const cplx p = row_p[j];
    const cplx q = row_q[j];
    row_p[j] = u00 * p + u01 * q;
    row_q[j] = u10 * p + u11 * q;
  }
}

}  // namespace filterkey::kernels::scalar
