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

// Dense complex matrices of dimension 1..16 and the handful of spectral
// operations the key-rate machinery needs.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace filterkey {

using cplx = std::complex<double>;

/// Row-major dense complex matrix. Rows and columns are each one of
/// 1, 2, 4, 8, 16 and every entry is finite.
class ComplexMatrix {
 public:
  ComplexMatrix() : ComplexMatrix(1, 1) {}
  /// Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);
  static ComplexMatrix diagonal(std::initializer_list<double> d);
  /// Real matrix from nested rows, e.g. {{1, 0}, {0, 1}}.
  static ComplexMatrix real(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  cplx& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }

  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }

  cplx trace() const;
  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;

  /// Submatrix of size (nr x nc) starting at (r0, c0).
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr,
                      std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);

  /// max |m(i,j) - conj(m(j,i))|; infinite for non-square input.
  double hermiticity_residual() const;
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> data_;
};

/// max entrywise |a - b|; infinite when shapes differ.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Square matrix with m(i,j) == conj(m(j,i)) to 1e-14 at construction.
class HermitianMatrix {
 public:
  static constexpr double kTolerance = 1e-14;

  /// Throws ArgumentError if m is not square or not Hermitian to kTolerance.
  explicit HermitianMatrix(ComplexMatrix m);
  /// Averages m with its adjoint first. For products such as A rho A^dagger
  /// whose Hermiticity only holds up to rounding.
  static HermitianMatrix symmetrized(const ComplexMatrix& m);

  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  cplx operator()(std::size_t i, std::size_t j) const noexcept {
    return m_(i, j);
  }
  double trace() const { return m_.trace().real(); }

 private:
  ComplexMatrix m_;
};

/// Real eigenvalues sorted ascending.
struct Spectrum {
  std::vector<double> eigenvalues;

  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
  double sum() const;
};

struct Eigensystem {
  Spectrum spectrum;
  /// Columns are orthonormal eigenvectors in the order of spectrum.
  ComplexMatrix vectors;
  int sweeps = 0;
};

/// Kronecker product. Throws SizeError if either resulting dimension
/// would exceed 16.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Cyclic complex Jacobi. Throws NumericalError after 100 sweeps without
/// reaching the 1e-14 off-diagonal threshold.
Eigensystem hermitian_eigensystem(const HermitianMatrix& m);
Spectrum hermitian_eigenvalues(const HermitianMatrix& m);

/// Singular values from the eigenvalues of m^dagger m, clamped at zero,
/// sorted ascending.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Sum of singular values. Hermitian input takes the sum of |eigenvalues|,
/// which keeps rank-deficient blocks exact to rounding.
double trace_norm(const ComplexMatrix& m);

double min_eigenvalue(const HermitianMatrix& m);

/// Eigenvalues (ascending) of a 4x4 Hermitian matrix in row-major order.
/// Same rotation scheme as hermitian_eigensystem on fixed-size storage, for
/// hot loops. Only the upper triangle is read.
std::array<double, 4> hermitian_eigenvalues4(const std::array<cplx, 16>& m);

// Four-qubit subsystem handling -------------------------------------------

enum class Subsystem { A, B, APrime, BPrime };

/// Assignment of the four qubit factors to bit positions of a 16-dim index,
/// most significant first.
enum class Ordering {
  /// (A, B, A', B'): outer 4x4 block index is the key pair AB.
  kR1,
  /// (A, A', B, B'): outer block index is Alice's pair AA'.
  kR2,
};

std::array<Subsystem, 4> factors(Ordering o) noexcept;
std::string_view ordering_name(Ordering o) noexcept;
/// Accepts "R1" / "R2" (case-insensitive). Throws ArgumentError otherwise.
Ordering parse_ordering(std::string_view s);
std::string_view subsystem_name(Subsystem s) noexcept;
/// Accepts "A", "B", "A'", "B'", "Ap", "Bp". Throws ArgumentError otherwise.
Subsystem parse_subsystem(std::string_view s);

/// Swaps the bits of each transposed factor between row and column index.
/// m must be 16 x 16.
ComplexMatrix partial_transpose(const ComplexMatrix& m, Ordering ordering,
                                std::span<const Subsystem> transposed);

/// -sum v log2 v, with 0 log 0 = 0. Values below 1e-300, and negatives
/// down to -1e-12, count as zero; anything more negative is a DomainError.
double shannon_entropy_bits(std::span<const double> values);

}  // namespace filterkey
