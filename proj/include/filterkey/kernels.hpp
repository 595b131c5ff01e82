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

// Inner-loop kernels on interleaved complex<double> storage.
//
// Every kernel has a portable scalar reference in `kernels::scalar` and, on
// x86-64, an AVX2/FMA variant in `kernels::avx2`. The unqualified functions in
// `kernels` dispatch once per process to the best variant the CPU supports.
// The variants are equivalence-tested against each other; they are not
// required to be bitwise identical (FMA contraction differs).

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace filterkey::kernels {

using cplx = std::complex<double>;

enum class Backend { kScalar, kAvx2 };

/// Backend chosen by the dispatcher on this machine.
Backend active_backend() noexcept;
std::string_view backend_name(Backend b) noexcept;
/// True when the AVX2 variants may be called directly on this CPU.
bool avx2_available() noexcept;

// m is n x n row-major. Performs m(i,j) *= d(i) * d(j), i.e. D m D for a
// real diagonal D.
void congruence_scale(std::span<cplx> m, std::span<const double> d,
                      std::size_t n);

// out = a^dagger a, with a rows x cols row-major and out cols x cols.
void gram(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<cplx> out);

// Two-row complex rotation on contiguous rows of length n:
//   p' = u00 p + u01 q,  q' = u10 p + u11 q.
void rotate_rows(std::span<cplx> row_p, std::span<cplx> row_q, cplx u00,
                 cplx u01, cplx u10, cplx u11);

namespace scalar {
void congruence_scale(std::span<cplx> m, std::span<const double> d,
                      std::size_t n);
void gram(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<cplx> out);
void rotate_rows(std::span<cplx> row_p, std::span<cplx> row_q, cplx u00,
                 cplx u01, cplx u10, cplx u11);
}  // namespace scalar

namespace avx2 {
// Callers must check avx2_available() first.
void congruence_scale(std::span<cplx> m, std::span<const double> d,
                      std::size_t n);
void gram(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<cplx> out);
void rotate_rows(std::span<cplx> row_p, std::span<cplx> row_q, cplx u00,
                 cplx u01, cplx u10, cplx u11);
}  // namespace avx2

}  // namespace filterkey::kernels
