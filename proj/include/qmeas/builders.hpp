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

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qmeas/complex_matrix.hpp"
#include "qmeas/designs.hpp"
#include "qmeas/errors.hpp"
#include "qmeas/povm.hpp"
#include "qmeas/rng.hpp"

namespace qmeas {

inline constexpr double kPi = std::numbers::pi;

/// Cyclic-shift and phase generators of the discrete displacement group.
/// Satisfy X^d = Z^d = 1 and Z X = e^{2 pi i / d} X Z.
struct HeisenbergWeylPair {
  int d = 0;
  ComplexMatrix shift;  // X |j> = |j+1 mod d>
  ComplexMatrix phase;  // Z |j> = w^j |j>
};

inline HeisenbergWeylPair heisenberg_weyl(int d) {
  HeisenbergWeylPair hw;
  hw.d = d;
  hw.shift = ComplexMatrix(d);
  hw.phase = ComplexMatrix(d);
  for (int j = 0; j < d; ++j) {
    hw.shift.at((j + 1) % d, j) = 1.0;
    hw.phase.at(j, j) = std::polar(1.0, 2.0 * kPi * j / d);
  }
  return hw;
}

inline Povm computational_basis(int d) {
  if (d < 2) throw DomainError("computational_basis: need d >= 2");
  std::vector<ComplexMatrix> elements;
  elements.reserve(d);
  for (int j = 0; j < d; ++j) {
    ComplexMatrix e(d);
    e.at(j, j) = 1.0;
    elements.push_back(std::move(e));
  }
  return Povm(d, std::move(elements));
}

inline Povm fourier_basis(int d) {
  if (d < 2) throw DomainError("fourier_basis: need d >= 2");
  std::vector<ComplexMatrix> elements;
  elements.reserve(d);
  for (int k = 0; k < d; ++k) {
    Ket v(d);
    for (int j = 0; j < d; ++j) v[j] = std::polar(1.0 / std::sqrt(double(d)), 2.0 * kPi * j * k / d);
    elements.push_back(projector(v));
  }
  return Povm(d, std::move(elements));
}

/// Trivial measurement: the identity as the only outcome.
inline Povm trivial_povm(int d) {
  std::vector<ComplexMatrix> elements{ComplexMatrix::identity(d)};
  return Povm(d, std::move(elements), {"1"});
}

/// Symmetric informationally complete measurement in dimension 3, the
/// displacement orbit of the fiducial (0, 1, -e^{i phi}) / sqrt(2).
/// Enumeration order: shift power outer, phase power inner.
inline Povm sic_d3(double phi) {
  const HeisenbergWeylPair hw = heisenberg_weyl(3);
  Ket fiducial{Complex(0.0), Complex(1.0 / std::sqrt(2.0)),
               -std::polar(1.0 / std::sqrt(2.0), phi)};
  std::vector<ComplexMatrix> elements;
  std::vector<std::string> labels;
  elements.reserve(9);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      Ket v = fiducial;
      for (int a = 0; a < k; ++a) v = hw.phase * v;
      for (int a = 0; a < j; ++a) v = hw.shift * v;
      elements.push_back(Complex(1.0 / 3.0) * projector(v));
      labels.push_back(std::to_string(j) + std::to_string(k));
    }
  }
  return Povm(3, std::move(elements), std::move(labels));
}

namespace detail {

inline Ket bloch_ket(const std::array<double, 3>& r) {
  // (1 + r.sigma)/2 has top eigenvector with polar angle theta, azimuth phi.
  const double theta = std::acos(std::clamp(r[2], -1.0, 1.0));
  const double phi = std::atan2(r[1], r[0]);
  return Ket{Complex(std::cos(theta / 2.0)), std::polar(std::sin(theta / 2.0), phi)};
}

inline std::vector<std::array<double, 3>> platonic_vertices(const std::string& solid) {
  const double g = (1.0 + std::sqrt(5.0)) / 2.0;  // golden ratio
  std::vector<std::array<double, 3>> v;
  if (solid == "tetrahedron") {
    v = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  } else if (solid == "octahedron") {
    v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  } else if (solid == "cube") {
    for (int sx : {1, -1})
      for (int sy : {1, -1})
        for (int sz : {1, -1}) v.push_back({double(sx), double(sy), double(sz)});
  } else if (solid == "icosahedron") {
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) {
        v.push_back({0.0, s1 * 1.0, s2 * g});
        v.push_back({s1 * 1.0, s2 * g, 0.0});
        v.push_back({s2 * g, 0.0, s1 * 1.0});
      }
  } else if (solid == "dodecahedron") {
    for (int sx : {1, -1})
      for (int sy : {1, -1})
        for (int sz : {1, -1}) v.push_back({double(sx), double(sy), double(sz)});
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) {
        v.push_back({0.0, s1 / g, s2 * g});
        v.push_back({s1 / g, s2 * g, 0.0});
        v.push_back({s2 * g, 0.0, s1 / g});
      }
  } else {
    throw DomainError("platonic_design: unknown solid '" + solid + "'");
  }
  for (auto& r : v) {
    const double n = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    r = {r[0] / n, r[1] / n, r[2] / n};
  }
  return v;
}

}  // namespace detail

/// Qubit state set from the vertices of a platonic solid, uniform weights.
/// Design strengths: tetrahedron 2, octahedron 3, cube 3, icosahedron 5,
/// dodecahedron 5.
inline WeightedStateSet platonic_design(const std::string& solid) {
  const auto vertices = detail::platonic_vertices(solid);
  std::vector<Ket> states;
  states.reserve(vertices.size());
  for (const auto& r : vertices) states.push_back(detail::bloch_ket(r));
  return WeightedStateSet::uniform(2, std::move(states));
}

/// Qubit SIC: tetrahedron vertices as a four-outcome measurement.
inline Povm sic_d2_tetrahedron() {
  return design_to_povm(platonic_design("tetrahedron"));
}

/// Parameters of the three-basis family in dimension 4; each angle lives
/// in [0, pi) because shifting any of them by pi only permutes columns.
struct MubTripleParams {
  double x = 0.0, y = 0.0, z = 0.0;

  void check() const {
    if (x < 0.0 || x >= kPi || y < 0.0 || y >= kPi || z < 0.0 || z >= kPi)
      throw DomainError("MubTripleParams: angles must lie in [0, pi)");
  }
};

/// Computational basis plus the two parametrized complex Hadamard bases in
/// dimension 4. All three are pairwise mutually unbiased for every choice
/// of parameters.
inline std::array<Povm, 3> mub_triple_d4(const MubTripleParams& p) {
  p.check();
  const Complex i(0.0, 1.0);
  const Complex ex = std::polar(1.0, p.x);
  const Complex ey = std::polar(1.0, p.y);
  const Complex ez = std::polar(1.0, p.z);

  const std::array<std::array<Complex, 4>, 4> h1{{{1, 1, 1, 1},
                                                  {1, 1, -1, -1},
                                                  {1, -1, i * ex, -i * ex},
                                                  {1, -1, -i * ex, i * ex}}};
  const std::array<std::array<Complex, 4>, 4> h2{{{1, 1, 1, 1},
                                                  {1, 1, -1, -1},
                                                  {-ey, ey, ez, -ez},
                                                  {ey, -ey, ez, -ez}}};

  auto basis_from_columns = [](const std::array<std::array<Complex, 4>, 4>& h) {
    std::vector<ComplexMatrix> elements;
    elements.reserve(4);
    for (int c = 0; c < 4; ++c) {
      Ket v(4);
      for (int r = 0; r < 4; ++r) v[r] = h[r][c] / 2.0;
      elements.push_back(projector(v));
    }
    return Povm(4, std::move(elements));
  };

  return {computational_basis(4), basis_from_columns(h1), basis_from_columns(h2)};
}

/// f_{jkl} = tr(Ahat_j Bhat_k Chat_l) over trace-normalized elements.
/// Requires rank-1 inputs so each normalized element is a projector.
inline std::vector<std::vector<std::vector<Complex>>> triple_products(const Povm& a, const Povm& b,
                                                                      const Povm& c) {
  if (a.dim() != b.dim() || b.dim() != c.dim())
    throw DimMismatchError("triple_products: dimension mismatch");
  if (!is_rank1(a) || !is_rank1(b) || !is_rank1(c))
    throw NotRank1Error("triple_products: all inputs must be rank 1");
  std::vector<std::vector<std::vector<Complex>>> f(
      a.size(), std::vector<std::vector<Complex>>(b.size(), std::vector<Complex>(c.size())));
  for (int j = 0; j < a.size(); ++j)
    for (int k = 0; k < b.size(); ++k) {
      const ComplexMatrix ab = a.element(j) * b.element(k);
      const double ta = std::real(a.element(j).trace());
      const double tb = std::real(b.element(k).trace());
      for (int l = 0; l < c.size(); ++l) {
        const double tc = std::real(c.element(l).trace());
        f[j][k][l] = trace_product(ab, c.element(l)) / (ta * tb * tc);
      }
    }
  return f;
}

/// Seeded rank-1 measurement with m outcomes; conditioning by S^{-1/2}
/// makes the completeness exact. With m == d the output is projective.
inline Povm random_rank1_povm(int d, int m, std::uint64_t seed) {
  if (m < d) throw BadCountError("random_rank1_povm: need at least d outcomes");
  Rng rng(seed);
  return design_to_povm(random_one_design(d, m, rng));
}

/// Seeded general measurement from random PSD blocks, S^{-1/2}-normalized.
inline Povm random_povm(int d, int m, std::uint64_t seed) {
  if (m < 2) throw BadCountError("random_povm: need at least two outcomes");
  Rng rng(seed);
  std::vector<ComplexMatrix> blocks(m);
  ComplexMatrix s(d);
  for (int j = 0; j < m; ++j) {
    blocks[j] = rng.psd(d, rng.uniform_int(1, d));
    s += blocks[j];
  }
  const ComplexMatrix cond = inverse_sqrt(s);
  std::vector<ComplexMatrix> elements(m);
  for (int j = 0; j < m; ++j) elements[j] = cond * blocks[j] * cond;
  return Povm(d, std::move(elements));
}

/// Two-outcome qubit measurement (1 +- alpha +- a.sigma)/2.
inline Povm qubit_binary_povm(double alpha, const std::array<double, 3>& a) {
  const double len = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  if (alpha < 0.0 || alpha >= 1.0 || len > 1.0 - alpha + 1e-14)
    throw DomainError("qubit_binary_povm: need 0 <= alpha < 1 and |a| <= 1 - alpha");
  ComplexMatrix dir(2);
  dir.at(0, 0) = a[2];
  dir.at(0, 1) = Complex(a[0], -a[1]);
  dir.at(1, 0) = Complex(a[0], a[1]);
  dir.at(1, 1) = -a[2];
  const ComplexMatrix id = ComplexMatrix::identity(2);
  std::vector<ComplexMatrix> elements{Complex(0.5) * (Complex(1.0 + alpha) * id + dir),
                                      Complex(0.5) * (Complex(1.0 - alpha) * id - dir)};
  return Povm(2, std::move(elements), {"+", "-"});
}

/// Complete family of d+1 pairwise unbiased bases; supports d = 2 and odd
/// prime d. Used as reference input for family-sum checks.
inline std::vector<Povm> cmub_family(int d) {
  std::vector<Povm> family;
  if (d == 2) {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    family.push_back(computational_basis(2));  // Z
    family.push_back(Povm(2, {projector(Ket{s, s}), projector(Ket{s, -s})}));          // X
    family.push_back(Povm(2, {projector(Ket{s, i * s}), projector(Ket{s, -i * s})}));  // Y
    return family;
  }
  // Odd prime d: computational basis plus the d quadratic-phase bases.
  for (int p = 2; p < d; ++p)
    if (d % p == 0) throw DomainError("cmub_family: d must be 2 or an odd prime");
  family.push_back(computational_basis(d));
  for (int r = 0; r < d; ++r) {
    std::vector<ComplexMatrix> elements;
    elements.reserve(d);
    for (int m = 0; m < d; ++m) {
      Ket v(d);
      for (int j = 0; j < d; ++j)
        v[j] = std::polar(1.0 / std::sqrt(double(d)), 2.0 * kPi * (r * j * j + m * j) / d);
      elements.push_back(projector(v));
    }
    family.push_back(Povm(d, std::move(elements)));
  }
  return family;
}

}  // namespace qmeas
