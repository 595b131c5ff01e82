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

#include "filterkey/qmat.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "filterkey/errors.hpp"
#include "filterkey/kernels.hpp"

namespace filterkey {

namespace {

bool valid_dim(std::size_t n) {
  return n == 1 || n == 2 || n == 4 || n == 8 || n == 16;
}

void check_dims(std::size_t rows, std::size_t cols) {
  if (!valid_dim(rows) || !valid_dim(cols))
    throw SizeError("matrix dimensions must be in {1,2,4,8,16}, got " +
                    std::to_string(rows) + "x" + std::to_string(cols));
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  check_dims(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  check_dims(rows, cols);
  if (data_.size() != rows * cols)
    throw SizeError("entry count does not match matrix shape");
  for (const cplx& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ArgumentError("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> d) {
  return diagonal(std::span<const double>(d.begin(), d.size()));
}

ComplexMatrix ComplexMatrix::real(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr ? rows.begin()->size() : 0;
  std::vector<cplx> e;
  e.reserve(nr * nc);
  for (const auto& r : rows) {
    if (r.size() != nc) throw SizeError("ragged matrix literal");
    for (double v : r) e.emplace_back(v, 0.0);
  }
  return ComplexMatrix(nr, nc, std::move(e));
}

cplx ComplexMatrix::trace() const {
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0,
                                   std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw SizeError("block extends past matrix bounds");
  ComplexMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0,
                              const ComplexMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
    throw SizeError("block extends past matrix bounds");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

double ComplexMatrix::hermiticity_residual() const {
  if (!square()) return std::numeric_limits<double>::infinity();
  double r = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      r = std::max(r, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return r;
}

double ComplexMatrix::max_abs() const {
  double r = 0.0;
  for (const cplx& z : data_) r = std::max(r, std::abs(z));
  return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw SizeError("shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw SizeError("shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw SizeError("inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return std::numeric_limits<double>::infinity();
  double r = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    r = std::max(r, std::abs(a.data()[k] - b.data()[k]));
  return r;
}

// HermitianMatrix ---------------------------------------------------------

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.square()) throw ArgumentError("Hermitian matrix must be square");
  const double r = m_.hermiticity_residual();
  if (r > kTolerance)
    throw ArgumentError("matrix is not Hermitian (residual " +
                        std::to_string(r) + ")");
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  if (!m.square()) throw ArgumentError("Hermitian matrix must be square");
  ComplexMatrix h = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    h(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return HermitianMatrix(std::move(h));
}

double Spectrum::sum() const {
  return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
}

// Kronecker product -------------------------------------------------------

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  if (a.rows() * rb > 16 || a.cols() * cb > 16)
    throw SizeError("tensor product exceeds dimension 16");
  ComplexMatrix out(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l)
          out(i * rb + k, j * cb + l) = aij * b(k, l);
    }
  return out;
}

// Jacobi eigensolver ------------------------------------------------------

namespace {

constexpr double kOffDiagonalThreshold = 1e-14;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const cplx& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

Eigensystem hermitian_eigensystem(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  ComplexMatrix a = h.matrix();
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  // Rows of w are the eigenvectors; transposed at the end.
  ComplexMatrix w = ComplexMatrix::identity(n);

  const double scale = frobenius_norm(a);
  const double target = kOffDiagonalThreshold * scale;
  int sweep = 0;
  while (scale > 0.0 && off_diagonal_norm(a) > target) {
    if (sweep == kMaxSweeps)
      throw NumericalError("Jacobi eigensolver did not converge in " +
                           std::to_string(kMaxSweeps) + " sweeps");
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const cplx phase = apq / g;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U restricted to (p, q).
        const cplx upp = c, upq = s;
        const cplx uqp = -s * std::conj(phase), uqq = c * std::conj(phase);

        // a <- a U (columns p, q)
        for (std::size_t i = 0; i < n; ++i) {
          const cplx aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * upp + aiq * uqp;
          a(i, q) = aip * upq + aiq * uqq;
        }
        // a <- U^dagger a (rows p, q)
        kernels::rotate_rows(a.data().subspan(p * n, n),
                             a.data().subspan(q * n, n), std::conj(upp),
                             std::conj(uqp), std::conj(upq), std::conj(uqq));
        // w <- U^T w
        kernels::rotate_rows(w.data().subspan(p * n, n),
                             w.data().subspan(q * n, n), upp, uqp, upq, uqq);

        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * g;
        a(q, q) = aqq + t * g;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });

  Eigensystem es;
  es.sweeps = sweep;
  es.spectrum.eigenvalues.reserve(n);
  es.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    es.spectrum.eigenvalues.push_back(a(order[k], order[k]).real());
    for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = w(order[k], i);
  }
  return es;
}

std::array<double, 4> hermitian_eigenvalues4(const std::array<cplx, 16>& in) {
  std::array<cplx, 16> a{};
  double scale2 = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    a[i * 4 + i] = in[i * 4 + i].real();
    for (std::size_t j = i + 1; j < 4; ++j) {
      a[i * 4 + j] = in[i * 4 + j];
      a[j * 4 + i] = std::conj(in[i * 4 + j]);
      scale2 += 2.0 * std::norm(in[i * 4 + j]);
    }
    scale2 += std::norm(a[i * 4 + i]);
  }
  const double target2 =
      kOffDiagonalThreshold * kOffDiagonalThreshold * scale2;
  auto off2 = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) s += 2.0 * std::norm(a[i * 4 + j]);
    return s;
  };
  int sweep = 0;
  while (scale2 > 0.0 && off2() > target2) {
    if (sweep++ == kMaxSweeps)
      throw NumericalError("Jacobi eigensolver did not converge in " +
                           std::to_string(kMaxSweeps) + " sweeps");
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        const cplx apq = a[p * 4 + q];
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const cplx phase = apq / g;
        const double app = a[p * 4 + p].real();
        const double aqq = a[q * 4 + q].real();
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx upp = c, upq = s;
        const cplx uqp = -s * std::conj(phase), uqq = c * std::conj(phase);
        for (std::size_t i = 0; i < 4; ++i) {
          const cplx aip = a[i * 4 + p], aiq = a[i * 4 + q];
          a[i * 4 + p] = aip * upp + aiq * uqp;
          a[i * 4 + q] = aip * upq + aiq * uqq;
        }
        for (std::size_t j = 0; j < 4; ++j) {
          const cplx apj = a[p * 4 + j], aqj = a[q * 4 + j];
          a[p * 4 + j] = std::conj(upp) * apj + std::conj(uqp) * aqj;
          a[q * 4 + j] = std::conj(upq) * apj + std::conj(uqq) * aqj;
        }
        a[p * 4 + q] = 0.0;
        a[q * 4 + p] = 0.0;
        a[p * 4 + p] = app - t * g;
        a[q * 4 + q] = aqq + t * g;
      }
    }
  }
  std::array<double, 4> ev{a[0].real(), a[5].real(), a[10].real(), a[15].real()};
  std::sort(ev.begin(), ev.end());
  return ev;
}

Spectrum hermitian_eigenvalues(const HermitianMatrix& m) {
  return hermitian_eigensystem(m).spectrum;
}

double min_eigenvalue(const HermitianMatrix& m) {
  return hermitian_eigenvalues(m).min();
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  const std::size_t cols = m.cols();
  ComplexMatrix g(cols, cols);
  kernels::gram(m.data(), m.rows(), cols, g.data());
  Spectrum s = hermitian_eigenvalues(HermitianMatrix::symmetrized(g));
  std::vector<double> out;
  out.reserve(cols);
  for (double l : s.eigenvalues) out.push_back(std::sqrt(std::max(l, 0.0)));
  return out;
}

double trace_norm(const ComplexMatrix& m) {
  if (!m.square()) throw SizeError("trace norm requires a square matrix");
  if (m.hermiticity_residual() <= HermitianMatrix::kTolerance) {
    double s = 0.0;
    for (double l : hermitian_eigenvalues(HermitianMatrix::symmetrized(m)).eigenvalues)
      s += std::abs(l);
    return s;
  }
  const std::vector<double> sv = singular_values(m);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

// Subsystems and partial transpose ----------------------------------------

std::array<Subsystem, 4> factors(Ordering o) noexcept {
  using S = Subsystem;
  if (o == Ordering::kR1) return {S::A, S::B, S::APrime, S::BPrime};
  return {S::A, S::APrime, S::B, S::BPrime};
}

std::string_view ordering_name(Ordering o) noexcept {
  return o == Ordering::kR1 ? "R1" : "R2";
}

Ordering parse_ordering(std::string_view s) {
  if (s == "R1" || s == "r1") return Ordering::kR1;
  if (s == "R2" || s == "r2") return Ordering::kR2;
  throw ArgumentError("unknown subsystem ordering '" + std::string(s) + "'");
}

std::string_view subsystem_name(Subsystem s) noexcept {
  switch (s) {
    case Subsystem::A: return "A";
    case Subsystem::B: return "B";
    case Subsystem::APrime: return "A'";
    case Subsystem::BPrime: return "B'";
  }
  return "?";
}

Subsystem parse_subsystem(std::string_view s) {
  if (s == "A") return Subsystem::A;
  if (s == "B") return Subsystem::B;
  if (s == "A'" || s == "Ap") return Subsystem::APrime;
  if (s == "B'" || s == "Bp") return Subsystem::BPrime;
  throw ArgumentError("unknown subsystem label '" + std::string(s) + "'");
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Ordering ordering,
                                std::span<const Subsystem> transposed) {
  if (m.rows() != 16 || m.cols() != 16)
    throw SizeError("partial transpose expects a 16x16 operator");
  const auto f = factors(ordering);
  std::size_t mask = 0;
  for (Subsystem s : transposed) {
    const auto it = std::find(f.begin(), f.end(), s);
    if (it == f.end()) throw ArgumentError("subsystem not in ordering");
    mask |= std::size_t{1} << (3 - static_cast<std::size_t>(it - f.begin()));
  }
  ComplexMatrix out(16, 16);
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t c = 0; c < 16; ++c) {
      const std::size_t rs = (r & ~mask) | (c & mask);
      const std::size_t cs = (c & ~mask) | (r & mask);
      out(r, c) = m(rs, cs);
    }
  return out;
}

// Entropy -----------------------------------------------------------------

double shannon_entropy_bits(std::span<const double> values) {
  double h = 0.0;
  for (double v : values) {
    if (std::isnan(v) || v < -1e-12 || v > 1.0 + 1e-12)
      throw DomainError("entropy argument outside [0, 1]: " + std::to_string(v));
    if (v < 1e-300) continue;
    h -= v * std::log2(v);
  }
  return h;
}

}  // namespace filterkey
