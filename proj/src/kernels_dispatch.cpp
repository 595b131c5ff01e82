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

namespace filterkey::kernels {

namespace {

bool detect_avx2() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct Table {
  Backend backend;
  void (*congruence_scale)(std::span<cplx>, std::span<const double>,
                           std::size_t);
  void (*gram)(std::span<const cplx>, std::size_t, std::size_t,
               std::span<cplx>);
  void (*rotate_rows)(std::span<cplx>, std::span<cplx>, cplx, cplx, cplx,
                      cplx);
};

const Table& table() noexcept {
  static const Table t = detect_avx2()
                             ? Table{Backend::kAvx2, &avx2::congruence_scale,
                                     &avx2::gram, &avx2::rotate_rows}
                             : Table{Backend::kScalar,
                                     &scalar::congruence_scale, &scalar::gram,
                                     &scalar::rotate_rows};
  return t;
}

}  // namespace

bool avx2_available() noexcept {
  static const bool ok = detect_avx2();
  return ok;
}

Backend active_backend() noexcept { return table().backend; }

std::string_view backend_name(Backend b) noexcept {
  return b == Backend::kAvx2 ? "avx2" : "scalar";
}

void congruence_scale(std::span<cplx> m, std::span<const double> d,
                      std::size_t n) {
  table().congruence_scale(m, d, n);
}

void gram(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<cplx> out) {
  table().gram(a, rows, cols, out);
}

void rotate_rows(std::span<cplx> row_p, std::span<cplx> row_q, cplx u00,
                 cplx u01, cplx u10, cplx u11) {
  table().rotate_rows(row_p, row_q, u00, u01, u10, u11);
}

}  // namespace filterkey::kernels
