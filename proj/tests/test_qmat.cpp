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

#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "filterkey/errors.hpp"
#include "filterkey/qmat.hpp"
#include "filterkey/states.hpp"
#include "test_support.hpp"

namespace fk = filterkey;
using fk::cplx;
using fk::ComplexMatrix;
using fk::HermitianMatrix;

namespace {

constexpr double kTol = 1e-10;

// Fixed matrix whose characteristic-polynomial roots were computed by
// tests/oracles/closed_forms.py (numpy determinant + bisection).
ComplexMatrix oracle_matrix() {
  using namespace std::complex_literals;
  return ComplexMatrix(4, 4,
                       {2.0, 1.0 - 1i, 0.5i, 0.0,
                        1.0 + 1i, -1.0, 0.25, 2i,
                        -0.5i, 0.25, 0.5, 1.0 - 0.5i,
                        0.0, -2i, 1.0 + 0.5i, 3.0});
}
constexpr std::array<double, 4> kOracleRoots{-2.4002259555362553, 0.36229672962863491,
                                             2.2417360209203823, 4.2961932049872384};

ComplexMatrix reconstruct(const fk::Eigensystem& es) {
  const std::size_t n = es.vectors.rows();
  ComplexMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = es.spectrum.eigenvalues[i];
  return es.vectors * d * es.vectors.adjoint();
}

}  // namespace

TEST_CASE("ComplexMatrix rejects unsupported shapes and non-finite entries") {
  CHECK_THROWS_AS(ComplexMatrix(3, 3), fk::SizeError);
  CHECK_THROWS_AS(ComplexMatrix(32, 1), fk::SizeError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), fk::SizeError);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx(std::nan(""), 0.0)}), fk::ArgumentError);
  CHECK_THROWS_AS(HermitianMatrix(ComplexMatrix::real({{0, 1}, {0, 0}})),
                  fk::ArgumentError);
}

TEST_CASE("tensor_product") {
  SUBCASE("identity") {
    CHECK(fk::tensor_product(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) ==
          ComplexMatrix::identity(4));
  }
  SUBCASE("diagonal letters") {
    const double a = 0.3, b = 0.7, r = 0.2, s = 0.9;
    const ComplexMatrix k =
        fk::tensor_product(ComplexMatrix::diagonal({a, b}), ComplexMatrix::diagonal({r, s}));
    CHECK(fk::max_abs_diff(k, ComplexMatrix::diagonal({a * r, a * s, b * r, b * s})) == 0.0);
  }
  SUBCASE("random pairs against the index definition") {
    fk::testing::Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
      const ComplexMatrix a = fk::testing::random_matrix(rng, 2, 2);
      const ComplexMatrix b = fk::testing::random_matrix(rng, 2, 2);
      const ComplexMatrix k = fk::tensor_product(a, b);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          for (std::size_t p = 0; p < 2; ++p)
            for (std::size_t q = 0; q < 2; ++q)
              CHECK(k(i * 2 + p, j * 2 + q) == a(i, j) * b(p, q));
    }
  }
  SUBCASE("overflow") {
    CHECK_THROWS_AS(fk::tensor_product(ComplexMatrix::identity(8), ComplexMatrix::identity(4)),
                    fk::SizeError);
  }
  SUBCASE("trace is multiplicative") {
    fk::testing::Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
      const ComplexMatrix a = fk::testing::random_matrix(rng, 4, 4);
      const ComplexMatrix b = fk::testing::random_matrix(rng, 4, 4);
      CHECK(std::abs(fk::tensor_product(a, b).trace() - a.trace() * b.trace()) <= 1e-12);
    }
  }
}

TEST_CASE("hermitian_eigenvalues") {
  SUBCASE("already diagonal") {
    const auto s = fk::hermitian_eigenvalues(
        HermitianMatrix(ComplexMatrix::diagonal({1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3})));
    const std::vector<double> expect{1.0 / 6, 1.0 / 6, 1.0 / 3, 1.0 / 3};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(s.eigenvalues[i] - expect[i]) <= kTol);
  }
  SUBCASE("middle block of tau1: 1/3 +- 1/6") {
    const auto s = fk::hermitian_eigenvalues(
        HermitianMatrix(ComplexMatrix::real({{1.0 / 3, -1.0 / 6}, {-1.0 / 6, 1.0 / 3}})));
    CHECK(std::abs(s.eigenvalues[0] - 1.0 / 6) <= kTol);
    CHECK(std::abs(s.eigenvalues[1] - 1.0 / 2) <= kTol);
  }
  SUBCASE("frozen characteristic-polynomial roots") {
    const auto s = fk::hermitian_eigenvalues(HermitianMatrix(oracle_matrix()));
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(s.eigenvalues[i] - kOracleRoots[i]) <= kTol);
  }
  SUBCASE("random 4x4: det(M - lambda I) sign change brackets each eigenvalue") {
    fk::testing::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const HermitianMatrix h = fk::testing::random_hermitian(rng, 4);
      const auto s = fk::hermitian_eigenvalues(h);
      const auto roots = fk::testing::charpoly_roots(h.matrix(), -12.0, 12.0, 4000);
      REQUIRE(roots.size() == 4);
      for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(s.eigenvalues[i] - roots[i]) <= 1e-9);
    }
  }
  SUBCASE("fixed-size 4x4 path agrees with the general solver") {
    fk::testing::Rng rng(4);
    for (int trial = 0; trial < 500; ++trial) {
      const HermitianMatrix h = fk::testing::random_hermitian(rng, 4);
      std::array<cplx, 16> a{};
      for (std::size_t i = 0; i < 16; ++i) a[i] = h.matrix().data()[i];
      const auto fast = fk::hermitian_eigenvalues4(a);
      const auto ref = fk::hermitian_eigenvalues(h).eigenvalues;
      for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(fast[i] - ref[i]) <= 1e-12);
    }
  }
  SUBCASE("zero matrix") {
    const auto s = fk::hermitian_eigenvalues(HermitianMatrix(ComplexMatrix(4, 4)));
    for (double l : s.eigenvalues) CHECK(l == 0.0);
  }
}

TEST_CASE("eigendecomposition invariants on 1000 random 16x16 Hermitian matrices") {
  fk::testing::Rng rng(5);
  double worst_reconstruction = 0.0, worst_trace = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const HermitianMatrix h = fk::testing::random_hermitian(rng, 16);
    const fk::Eigensystem es = fk::hermitian_eigensystem(h);
    worst_reconstruction = std::max(worst_reconstruction, fk::max_abs_diff(reconstruct(es), h.matrix()));
    worst_trace = std::max(worst_trace, std::abs(es.spectrum.sum() - h.trace()));
    CHECK(std::is_sorted(es.spectrum.eigenvalues.begin(), es.spectrum.eigenvalues.end()));
  }
  CHECK(worst_reconstruction <= 1e-10);
  CHECK(worst_trace <= 1e-10);
}

TEST_CASE("trace_norm") {
  SUBCASE("density matrix has unit trace norm") {
    CHECK(std::abs(fk::trace_norm(fk::make_family1(0.3).matrix()) - 1.0) <= kTol);
    CHECK(std::abs(fk::trace_norm(fk::make_family3(0.13).matrix()) - 1.0) <= kTol);
  }
  SUBCASE("sigma0 - sigma1 of family 2 at p = 0.13 is 4p") {
    const auto s = fk::make_chi_sigmas(0.13);
    CHECK(std::abs(fk::trace_norm((s.s0 - s.s1).matrix()) - 0.52) <= 1e-12);
  }
  SUBCASE("Hermitian input: sum of |eigenvalues|") {
    fk::testing::Rng rng(6);
    for (int trial = 0; trial < 200; ++trial) {
      const HermitianMatrix h = fk::testing::random_hermitian(rng, 1u << (1 + trial % 4));
      double s = 0.0;
      for (double l : fk::hermitian_eigenvalues(h).eigenvalues) s += std::abs(l);
      CHECK(std::abs(fk::trace_norm(h.matrix()) - s) <= kTol);
    }
  }
  SUBCASE("non-Hermitian input goes through singular values") {
    // Upper-triangular 2x2 [[0, 2], [0, 0]] has singular values {0, 2}.
    CHECK(std::abs(fk::trace_norm(ComplexMatrix::real({{0, 2}, {0, 0}})) - 2.0) <= kTol);
    const auto sv = fk::singular_values(ComplexMatrix::real({{3, 0}, {0, -4}}));
    CHECK(std::abs(sv[0] - 3.0) <= kTol);
    CHECK(std::abs(sv[1] - 4.0) <= kTol);
  }
  SUBCASE("invariant under row and column permutations") {
    fk::testing::Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = trial % 2 ? 16 : 4;
      const ComplexMatrix m = fk::testing::random_matrix(rng, n, n);
      const ComplexMatrix u = fk::testing::random_permutation(rng, n);
      const ComplexMatrix v = fk::testing::random_permutation(rng, n);
      CHECK(std::abs(fk::trace_norm(u * m * v) - fk::trace_norm(m)) <= kTol);
    }
  }
  SUBCASE("non-square input is rejected") {
    CHECK_THROWS_AS(fk::trace_norm(ComplexMatrix(2, 4)), fk::SizeError);
  }
}

TEST_CASE("partial_transpose") {
  fk::testing::Rng rng(8);
  const std::array<fk::Subsystem, 2> bob{fk::Subsystem::B, fk::Subsystem::BPrime};
  SUBCASE("empty subset is the identity map") {
    const ComplexMatrix m = fk::testing::random_matrix(rng, 16, 16);
    CHECK(fk::partial_transpose(m, fk::Ordering::kR1, {}) == m);
  }
  SUBCASE("involution, trace and Hermiticity preserved") {
    for (int trial = 0; trial < 100; ++trial) {
      const ComplexMatrix m = fk::testing::random_matrix(rng, 16, 16);
      const auto o = trial % 2 ? fk::Ordering::kR1 : fk::Ordering::kR2;
      const ComplexMatrix pt = fk::partial_transpose(m, o, bob);
      CHECK(fk::partial_transpose(pt, o, bob) == m);
      CHECK(pt.trace() == m.trace());
      const HermitianMatrix h = fk::testing::random_hermitian(rng, 16);
      CHECK(fk::partial_transpose(h.matrix(), o, bob).hermiticity_residual() <= 1e-14);
    }
  }
  SUBCASE("transposing every factor is the full transpose") {
    const ComplexMatrix m = fk::testing::random_matrix(rng, 16, 16);
    const std::array<fk::Subsystem, 4> all{fk::Subsystem::A, fk::Subsystem::B,
                                           fk::Subsystem::APrime, fk::Subsystem::BPrime};
    CHECK(fk::partial_transpose(m, fk::Ordering::kR2, all) == m.transpose());
  }
  SUBCASE("R2 transposition over B, B' transposes each 4x4 block") {
    const ComplexMatrix m = fk::testing::random_matrix(rng, 16, 16);
    const ComplexMatrix pt = fk::partial_transpose(m, fk::Ordering::kR2, bob);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        CHECK(pt.block(4 * r, 4 * c, 4, 4) == m.block(4 * r, 4 * c, 4, 4).transpose());
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(fk::parse_subsystem("C"), fk::ArgumentError);
    CHECK_THROWS_AS(fk::parse_ordering("R3"), fk::ArgumentError);
    CHECK_THROWS_AS(fk::partial_transpose(ComplexMatrix(4, 4), fk::Ordering::kR1, bob),
                    fk::SizeError);
    CHECK(fk::parse_subsystem("B'") == fk::Subsystem::BPrime);
  }
}

TEST_CASE("min_eigenvalue") {
  CHECK(std::abs(fk::min_eigenvalue(HermitianMatrix(ComplexMatrix::identity(16))) - 1.0) <= kTol);
  CHECK(std::abs(fk::min_eigenvalue(HermitianMatrix(fk::make_tau().tau1.matrix())) - 1.0 / 6) <= kTol);

  SUBCASE("Bell projector partially transposed on its second qubit") {
    // |phi+><phi+|_AB (x) |00><00|_A'B' in ordering R1.
    ComplexMatrix bell(4, 4);
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    ComplexMatrix shield(4, 4);
    shield(0, 0) = 1.0;
    const ComplexMatrix rho = fk::tensor_product(bell, shield);
    const std::array<fk::Subsystem, 1> b{fk::Subsystem::B};
    const double lmin = fk::min_eigenvalue(
        HermitianMatrix(fk::partial_transpose(rho, fk::Ordering::kR1, b)));
    CHECK(std::abs(lmin + 0.5) <= kTol);
  }
}

TEST_CASE("shannon_entropy_bits") {
  const std::array<double, 4> point{1, 0, 0, 0}, uniform{0.25, 0.25, 0.25, 0.25},
      half{0.5, 0.5, 0, 0};
  CHECK(fk::shannon_entropy_bits(point) == 0.0);
  CHECK(std::abs(fk::shannon_entropy_bits(uniform) - 2.0) <= 1e-15);
  CHECK(std::abs(fk::shannon_entropy_bits(half) - 1.0) <= 1e-15);
  const std::array<double, 2> tiny_negative{-1e-13, 1.0}, tiny{1e-301, 1.0};
  CHECK(fk::shannon_entropy_bits(tiny_negative) == 0.0);
  CHECK(fk::shannon_entropy_bits(tiny) == 0.0);
  const std::array<double, 2> negative{-1e-6, 1.0}, too_big{0.5, 1.5};
  CHECK_THROWS_AS(fk::shannon_entropy_bits(negative), fk::DomainError);
  CHECK_THROWS_AS(fk::shannon_entropy_bits(too_big), fk::DomainError);
}
