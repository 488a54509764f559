// Copyright 2026 The qmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "qmeas/errors.hpp"
#include "qmeas/tolerances.hpp"

namespace qmeas {

using Complex = std::complex<double>;

/// A pure state as a column of amplitudes.
using Ket = std::vector<Complex>;

/// Dense square complex matrix, row-major. The carrier for operators,
/// measurement elements, projectors, and tensor-space intermediates.
/// Values are immutable-by-convention after construction and safe to
/// share across threads; all free functions below are pure.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim) : dim_(dim), entries_(static_cast<size_t>(dim) * dim) {}

  static ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

  int dim() const { return dim_; }

  Complex& at(int r, int c) { return entries_[static_cast<size_t>(r) * dim_ + c]; }
  const Complex& at(int r, int c) const { return entries_[static_cast<size_t>(r) * dim_ + c]; }

  const std::vector<Complex>& entries() const { return entries_; }
  std::vector<Complex>& entries() { return entries_; }

  Complex trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) out.at(c, r) = std::conj(at(r, c));
    return out;
  }

  /// Largest entry magnitude.
  double max_abs() const {
    double m = 0.0;
    for (const Complex& z : entries_) m = std::max(m, std::abs(z));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : entries_) s += std::norm(z);
    return std::sqrt(s);
  }

  bool is_hermitian(double tol = kTol.hermitian_flag) const {
    for (int r = 0; r < dim_; ++r)
      for (int c = r; c < dim_; ++c)
        if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
    return true;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    for (size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    for (size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (Complex& z : entries_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.dim_;
    ComplexMatrix out(n);
    for (int r = 0; r < n; ++r) {
      for (int k = 0; k < n; ++k) {
        const Complex ark = a.at(r, k);
        if (ark == Complex{}) continue;
        for (int c = 0; c < n; ++c) out.at(r, c) += ark * b.at(k, c);
      }
    }
    return out;
  }

 private:
  int dim_ = 0;
  std::vector<Complex> entries_;
};

inline Complex inner(const Ket& a, const Ket& b) {
  Complex s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm(const Ket& a) { return std::sqrt(std::real(inner(a, a))); }

inline Ket normalized(Ket a) {
  const double n = norm(a);
  for (Complex& z : a) z /= n;
  return a;
}

/// |a><a|
inline ComplexMatrix projector(const Ket& a) {
  const int d = static_cast<int>(a.size());
  ComplexMatrix p(d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) p.at(r, c) = a[r] * std::conj(a[c]);
  return p;
}

inline Ket operator*(const ComplexMatrix& m, const Ket& v) {
  const int d = m.dim();
  Ket out(d, Complex{});
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out[r] += m.at(r, c) * v[c];
  return out;
}

/// <a|M|a>
inline Complex expectation(const ComplexMatrix& m, const Ket& a) {
  return inner(a, m * a);
}

inline Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int n = a.dim();
  Complex s = 0.0;
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) s += a.at(r, k) * b.at(k, r);
  return s;
}

/// tr(A B) for Hermitian A, B; the imaginary part is pure rounding noise.
inline double real_overlap(const ComplexMatrix& a, const ComplexMatrix& b) {
  return std::real(trace_product(a, b));
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int da = a.dim(), db = b.dim();
  ComplexMatrix out(da * db);
  for (int ra = 0; ra < da; ++ra)
    for (int ca = 0; ca < da; ++ca) {
      const Complex z = a.at(ra, ca);
      if (z == Complex{}) continue;
      for (int rb = 0; rb < db; ++rb)
        for (int cb = 0; cb < db; ++cb)
          out.at(ra * db + rb, ca * db + cb) = z * b.at(rb, cb);
    }
  return out;
}

/// Traces out the first `n_traced` tensor factors of an operator on
/// (C^d)^(n_traced+1), leaving a d x d operator on the last factor.
inline ComplexMatrix partial_trace_first_n(const ComplexMatrix& m, int d, int n_traced) {
  long expected = 1;
  for (int i = 0; i < n_traced + 1; ++i) expected *= d;
  if (m.dim() != expected)
    throw DimMismatchError("partial_trace_first_n: operator dim " + std::to_string(m.dim()) +
                           " != d^(n+1) = " + std::to_string(expected));
  const long front = expected / d;
  ComplexMatrix out(d);
  for (long i = 0; i < front; ++i)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) out.at(r, c) += m.at(static_cast<int>(i * d + r), static_cast<int>(i * d + c));
  return out;
}

}  // namespace qmeas
