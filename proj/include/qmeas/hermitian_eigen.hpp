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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qmeas/complex_matrix.hpp"
#include "qmeas/errors.hpp"
#include "qmeas/tolerances.hpp"

namespace qmeas {

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // orthonormal columns, matching order
};

namespace detail {

inline double off_diagonal_mass(const ComplexMatrix& m) {
  double s = 0.0;
  const int n = m.dim();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (r != c) s += std::norm(m.at(r, c));
  return std::sqrt(s);
}

}  // namespace detail

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Dimensions here are tiny, so robustness wins over speed.
/// Sweeps stop once the off-diagonal Frobenius mass drops below
/// kTol.jacobi_off_diagonal relative to the Frobenius norm of the input.
inline EigenDecomposition hermitian_eigen(const ComplexMatrix& input) {
  const int n = input.dim();
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c)
      if (std::abs(input.at(r, c) - std::conj(input.at(c, r))) > kTol.eigen_input_symmetry)
        throw NotHermitianError("hermitian_eigen: symmetry residual exceeds tolerance at (" +
                                std::to_string(r) + "," + std::to_string(c) + ")");

  ComplexMatrix m = input;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double target = kTol.jacobi_off_diagonal * std::max(m.frobenius_norm(), 1e-300);

  bool converged = detail::off_diagonal_mass(m) <= target;
  for (int sweep = 0; sweep < kTol.jacobi_max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex mpq = m.at(p, q);
        const double r = std::abs(mpq);
        if (r == 0.0) continue;
        const Complex phase = mpq / r;  // e^{i arg(mpq)}

        const double app = std::real(m.at(p, p));
        const double aqq = std::real(m.at(q, q));
        // Rotation angle that annihilates the (p,q) entry of the
        // phase-aligned real 2x2 block [[app, r], [r, aqq]].
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // U restricted to the (p,q) plane; elsewhere identity.
        const Complex upp = c;
        const Complex upq = s * phase;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c;

        // m <- U^dag m U, applied as column then row updates.
        for (int k = 0; k < n; ++k) {
          const Complex mkp = m.at(k, p), mkq = m.at(k, q);
          m.at(k, p) = mkp * upp + mkq * uqp;
          m.at(k, q) = mkp * upq + mkq * uqq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex mpk = m.at(p, k), mqk = m.at(q, k);
          m.at(p, k) = std::conj(upp) * mpk + std::conj(uqp) * mqk;
          m.at(q, k) = std::conj(upq) * mpk + std::conj(uqq) * mqk;
        }
        for (int k = 0; k < n; ++k) {
          const Complex vkp = v.at(k, p), vkq = v.at(k, q);
          v.at(k, p) = vkp * upp + vkq * uqp;
          v.at(k, q) = vkp * upq + vkq * uqq;
        }
        // Hermiticity of the rotated pair can drift by rounding; pin it.
        m.at(q, p) = std::conj(m.at(p, q));
      }
    }
    converged = detail::off_diagonal_mass(m) <= target;
  }
  if (!converged)
    throw NoConvergenceError("hermitian_eigen: sweep cap reached before off-diagonal target");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = std::real(m.at(i, i));
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return diag[a] > diag[b]; });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (int i = 0; i < n; ++i) {
    out.eigenvalues[i] = diag[order[i]];
    for (int r = 0; r < n; ++r) out.eigenvectors.at(r, i) = v.at(r, order[i]);
  }
  return out;
}

/// Largest eigenvalue of a Hermitian positive semidefinite operator.
inline double operator_norm(const ComplexMatrix& m) {
  return hermitian_eigen(m).eigenvalues.front();
}

inline double min_eigenvalue(const ComplexMatrix& m) {
  return hermitian_eigen(m).eigenvalues.back();
}

inline Ket eigenvector_column(const EigenDecomposition& e, int col) {
  const int n = e.eigenvectors.dim();
  Ket k(n);
  for (int r = 0; r < n; ++r) k[r] = e.eigenvectors.at(r, col);
  return k;
}

/// f(M) = V f(diag) V^dag for Hermitian M.
template <typename Fn>
inline ComplexMatrix hermitian_function(const ComplexMatrix& m, Fn&& f) {
  const EigenDecomposition e = hermitian_eigen(m);
  const int n = m.dim();
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i) {
    const double fv = f(e.eigenvalues[i]);
    if (fv == 0.0) continue;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        out.at(r, c) += fv * e.eigenvectors.at(r, i) * std::conj(e.eigenvectors.at(c, i));
  }
  return out;
}

/// S^{-1/2} for positive definite S.
inline ComplexMatrix inverse_sqrt(const ComplexMatrix& m) {
  return hermitian_function(m, [](double x) { return 1.0 / std::sqrt(x); });
}

}  // namespace qmeas
