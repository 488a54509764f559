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

#include <catch2/catch_amalgamated.hpp>

#include "qmeas/complex_matrix.hpp"
#include "qmeas/fidelity.hpp"
#include "qmeas/hermitian_eigen.hpp"
#include "qmeas/rng.hpp"
#include "qmeas/symmetric_subspace.hpp"

using namespace qmeas;
using Catch::Matchers::WithinAbs;

namespace {

ComplexMatrix pauli_x() {
  ComplexMatrix m(2);
  m.at(0, 1) = 1.0;
  m.at(1, 0) = 1.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2);
  m.at(0, 0) = 1.0;
  m.at(1, 1) = -1.0;
  return m;
}

ComplexMatrix basis_projector(int d, int j) {
  ComplexMatrix m(d);
  m.at(j, j) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("eigensolver on diagonal and hand-solved matrices") {
  auto ez = hermitian_eigen(pauli_z());
  REQUIRE_THAT(ez.eigenvalues[0], WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(ez.eigenvalues[1], WithinAbs(-1.0, 1e-12));

  auto ei = hermitian_eigen(ComplexMatrix::identity(3));
  for (double v : ei.eigenvalues) REQUIRE_THAT(v, WithinAbs(1.0, 1e-12));

  // (1 + sigma_x)/2 has characteristic roots 1 and 0.
  ComplexMatrix half = Complex(0.5) * (ComplexMatrix::identity(2) + pauli_x());
  auto eh = hermitian_eigen(half);
  REQUIRE_THAT(eh.eigenvalues[0], WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(eh.eigenvalues[1], WithinAbs(0.0, 1e-12));
}

TEST_CASE("eigensolver rejects non-Hermitian input") {
  ComplexMatrix m(2);
  m.at(0, 1) = 1.0;  // missing conjugate partner
  REQUIRE_THROWS_AS(hermitian_eigen(m), NotHermitianError);
}

TEST_CASE("eigensolver reconstruction, trace, and orthonormality on random input") {
  Rng rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 7;
    const ComplexMatrix m = rng.hermitian(d);
    const EigenDecomposition e = hermitian_eigen(m);

    double eig_sum = 0.0;
    for (double v : e.eigenvalues) eig_sum += v;
    REQUIRE_THAT(eig_sum, WithinAbs(std::real(m.trace()), 1e-9));

    ComplexMatrix rec(d);
    for (int i = 0; i < d; ++i)
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          rec.at(r, c) +=
              e.eigenvalues[i] * e.eigenvectors.at(r, i) * std::conj(e.eigenvectors.at(c, i));
    REQUIRE((rec - m).max_abs() <= 1e-9 * (1.0 + m.max_abs()));

    const ComplexMatrix gram = e.eigenvectors.adjoint() * e.eigenvectors;
    REQUIRE((gram - ComplexMatrix::identity(d)).max_abs() <= 1e-9);

    REQUIRE(std::is_sorted(e.eigenvalues.rbegin(), e.eigenvalues.rend()));
  }
}

TEST_CASE("operator norm returns the top eigenvalue") {
  REQUIRE_THAT(operator_norm(ComplexMatrix::identity(5)), WithinAbs(1.0, 1e-12));

  // One copy of a basis projector maps to 1 + |0><0|, top eigenvalue 2.
  REQUIRE_THAT(operator_norm(q_map(basis_projector(2, 0))), WithinAbs(2.0, 1e-12));

  // Distinct basis projectors on two copies map to norm 2.
  REQUIRE_THAT(operator_norm(q_map(basis_projector(2, 0), basis_projector(2, 1))),
               WithinAbs(2.0, 1e-10));
}

TEST_CASE("kron layout") {
  const ComplexMatrix i4 = kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
  REQUIRE((i4 - ComplexMatrix::identity(4)).max_abs() == 0.0);

  const ComplexMatrix e = kron(basis_projector(2, 0), basis_projector(2, 1));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      REQUIRE_THAT(std::abs(e.at(r, c)), WithinAbs(r == 1 && c == 1 ? 1.0 : 0.0, 1e-15));

  const ComplexMatrix xx = kron(pauli_x(), pauli_x());
  Ket v00{1.0, 0.0, 0.0, 0.0};
  const Ket v11 = xx * v00;
  REQUIRE_THAT(std::abs(v11[3]), WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(std::abs(v11[0]) + std::abs(v11[1]) + std::abs(v11[2]), WithinAbs(0.0, 1e-15));
}

TEST_CASE("partial trace over leading factors") {
  const ComplexMatrix quarter = Complex(0.25) * ComplexMatrix::identity(4);
  const ComplexMatrix half = partial_trace_first_n(quarter, 2, 1);
  REQUIRE((half - Complex(0.5) * ComplexMatrix::identity(2)).max_abs() <= 1e-15);

  Rng rng(7);
  const ComplexMatrix rho = rng.psd(3, 2);
  const ComplexMatrix lifted = kron(basis_projector(3, 0), rho);
  REQUIRE((partial_trace_first_n(lifted, 3, 1) - rho).max_abs() <= 1e-12);

  // Trace is preserved.
  const ComplexMatrix big = rng.psd(9, 4);
  REQUIRE_THAT(std::real(partial_trace_first_n(big, 3, 1).trace()),
               WithinAbs(std::real(big.trace()), 1e-10));

  REQUIRE_THROWS_AS(partial_trace_first_n(big, 2, 1), DimMismatchError);
}

TEST_CASE("partial trace of the symmetrized lift matches the one-copy map") {
  const SymmetricProjector p2 = symmetric_projector(2, 2);
  const ComplexMatrix a = basis_projector(2, 0);
  const ComplexMatrix lifted = p2.matrix * kron(a, ComplexMatrix::identity(2));
  const ComplexMatrix reduced = partial_trace_first_n(lifted, 2, 1);
  // (1 + |0><0|)/2, i.e. the one-copy map halved.
  const ComplexMatrix expected = Complex(0.5) * q_map(a);
  REQUIRE((reduced - expected).max_abs() <= 1e-12);
}

TEST_CASE("symmetric projector traces count the symmetric subspace") {
  REQUIRE_THAT(std::real(symmetric_projector(2, 2).matrix.trace()), WithinAbs(3.0, 1e-10));
  REQUIRE_THAT(std::real(symmetric_projector(3, 2).matrix.trace()), WithinAbs(6.0, 1e-10));
  REQUIRE_THAT(std::real(symmetric_projector(2, 3).matrix.trace()), WithinAbs(4.0, 1e-10));
  REQUIRE_THAT(symmetric_dimension(4, 3), WithinAbs(20.0, 1e-12));
}

TEST_CASE("symmetric projector is idempotent and permutation invariant") {
  for (auto [d, t] : {std::pair{2, 2}, {2, 3}, {3, 2}, {2, 4}}) {
    const SymmetricProjector p = symmetric_projector(d, t);
    REQUIRE((p.matrix * p.matrix - p.matrix).max_abs() <= 1e-10);
  }

  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 2;
    const int t = 2 + trial % 2;
    const ComplexMatrix u = rng.unitary(d);
    ComplexMatrix ut = u;
    for (int k = 1; k < t; ++k) ut = kron(ut, u);
    const ComplexMatrix p = symmetric_projector(d, t).matrix;
    REQUIRE(commutator(p, ut).max_abs() <= 1e-9);
  }
}

TEST_CASE("symmetric projector resource guard") {
  REQUIRE_THROWS_AS(symmetric_projector(2, 13), TooLargeError);
}

TEST_CASE("swap operator identities") {
  for (int d : {2, 3, 4}) {
    const ComplexMatrix w = swap_operator(d);
    REQUIRE_THAT(std::real(w.trace()), WithinAbs(double(d), 1e-12));
    const ComplexMatrix two_p2 = Complex(2.0) * symmetric_projector(d, 2).matrix;
    REQUIRE((w - (two_p2 - ComplexMatrix::identity(d * d))).max_abs() <= 1e-12);
  }

  const ComplexMatrix w = swap_operator(2);
  Ket v01{0.0, 1.0, 0.0, 0.0};
  const Ket v10 = w * v01;
  REQUIRE_THAT(std::abs(v10[2]), WithinAbs(1.0, 1e-15));
}

TEST_CASE("swap trick: tr(W (A x B)) = tr(A B)") {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 3;
    const ComplexMatrix a = rng.psd(d, 1 + trial % d);
    const ComplexMatrix b = rng.psd(d, d);
    const double lhs = std::real(trace_product(swap_operator(d), kron(a, b)));
    REQUIRE_THAT(lhs, WithinAbs(real_overlap(a, b), 1e-9));
  }

  // Unbiased eigenprojectors: d tr(W (A x B)) equals tr(A) tr(B).
  const ComplexMatrix zp = basis_projector(2, 0);
  ComplexMatrix xp(2);
  xp.at(0, 0) = xp.at(0, 1) = xp.at(1, 0) = xp.at(1, 1) = 0.5;
  const double lhs = 2.0 * std::real(trace_product(swap_operator(2), kron(zp, xp)));
  REQUIRE_THAT(lhs, WithinAbs(1.0, 1e-12));
}
