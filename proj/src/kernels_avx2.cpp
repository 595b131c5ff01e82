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

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define FILTERKEY_HAVE_X86 1
#endif

namespace filterkey::kernels::avx2 {

#if FILTERKEY_HAVE_X86

namespace {

#define FK_TARGET __attribute__((target("avx2,fma")))

// Two complex numbers per register: [re0, im0, re1, im1].
FK_TARGET inline __m256d load2(const cplx* p) {
  return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}

FK_TARGET inline void store2(cplx* p, __m256d v) {
  _mm256_storeu_pd(reinterpret_cast<double*>(p), v);
}

// Broadcast a complex scalar as [re, re, re, re] and [im, im, im, im].
struct Bcast {
  __m256d re;
  __m256d im;
};

FK_TARGET inline Bcast bcast(cplx z) {
  return {_mm256_set1_pd(z.real()), _mm256_set1_pd(z.imag())};
}

// z * v for a broadcast scalar z and two packed complex values v.
FK_TARGET inline __m256d cmul(const Bcast& z, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(z.re, v, _mm256_mul_pd(z.im, swapped));
}

}  // namespace

FK_TARGET void congruence_scale(std::span<cplx> m, std::span<const double> d,
                                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d di = _mm256_set1_pd(d[i]);
    cplx* row = m.data() + i * n;
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      // [d_j, d_j, d_j+1, d_j+1]
      const __m128d pair = _mm_loadu_pd(d.data() + j);
      const __m256d dj = _mm256_permute4x64_pd(_mm256_castpd128_pd256(pair),
                                               0b01010000);
      store2(row + j, _mm256_mul_pd(load2(row + j), _mm256_mul_pd(di, dj)));
    }
    for (; j < n; ++j) row[j] *= d[i] * d[j];
  }
}

FK_TARGET void gram(std::span<const cplx> a, std::size_t rows,
                    std::size_t cols, std::span<cplx> out) {
  // out(j, :) = sum_i conj(a(i, j)) * a(i, :)
  for (std::size_t j = 0; j < cols; ++j) {
    cplx* orow = out.data() + j * cols;
    std::size_t k = 0;
    for (; k + 2 <= cols; k += 2) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t i = 0; i < rows; ++i) {
        const Bcast z = bcast(std::conj(a[i * cols + j]));
        acc = _mm256_add_pd(acc, cmul(z, load2(a.data() + i * cols + k)));
      }
      store2(orow + k, acc);
    }
    for (; k < cols; ++k) {
      cplx acc{0.0, 0.0};
      for (std::size_t i = 0; i < rows; ++i)
        acc += std::conj(a[i * cols + j]) * a[i * cols + k];
      orow[k] = acc;
    }
  }
}

FK_TARGET void rotate_rows(std::span<cplx> row_p, std::span<cplx> row_q,
                           cplx u00, cplx u01, cplx u10, cplx u11) {
  const Bcast b00 = bcast(u00), b01 = bcast(u01), b10 = bcast(u10),
              b11 = bcast(u11);
  const std::size_t n = row_p.size();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d p = load2(row_p.data() + j);
    const __m256d q = load2(row_q.data() + j);
    store2(row_p.data() + j, _mm256_add_pd(cmul(b00, p), cmul(b01, q)));
    store2(row_q.data() + j, _mm256_add_pd(cmul(b10, p), cmul(b11, q)));
  }
  for (; j < n; ++j) {
    const cplx p = row_p[j];
    const cplx q = row_q[j];
    row_p[j] = u00 * p + u01 * q;
    row_q[j] = u10 * p + u11 * q;
  }
}

#undef FK_TARGET

#else  // no x86: forward to the scalar reference

void congruence_scale(std::span<cplx> m, std::span<const double> d,
                      std::size_t n) {
  scalar::congruence_scale(m, d, n);
}
void gram(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<cplx> out) {
  scalar::gram(a, rows, cols, out);
}
void rotate_rows(std::span<cplx> row_p, std::span<cplx> row_q, cplx u00,
                 cplx u01, cplx u10, cplx u11) {
  scalar::rotate_rows(row_p, row_q, u00, u01, u10, u11);
}

#endif

}  // namespace filterkey::kernels::avx2
