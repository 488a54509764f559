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

#include "qmeas/builders.hpp"
#include "qmeas/designs.hpp"
#include "qmeas/rng.hpp"

using namespace qmeas;
using Catch::Matchers::WithinAbs;

namespace {

WeightedStateSet basis_set(int d) {
  std::vector<Ket> states;
  for (int j = 0; j < d; ++j) {
    Ket v(d, Complex{});
    v[j] = 1.0;
    states.push_back(std::move(v));
  }
  return WeightedStateSet::uniform(d, std::move(states));
}

WeightedStateSet cmub_set(int d) {
  std::vector<Ket> states;
  for (const Povm& basis : cmub_family(d))
    for (const ComplexMatrix& e : basis.elements())
      states.push_back(eigenvector_column(hermitian_eigen(e), 0));
  return WeightedStateSet::uniform(d, std::move(states));
}

}  // namespace

TEST_CASE("state-set invariants are enforced") {
  REQUIRE_THROWS_AS(WeightedStateSet(2, {Ket{1.0, 1.0}}, {2.0}), DomainError);  // unnormalized
  REQUIRE_THROWS_AS(WeightedStateSet(2, {Ket{1.0, 0.0}}, {1.0}), DomainError);  // weights != d
  REQUIRE_THROWS_AS(WeightedStateSet(2, {Ket{1.0, 0.0}, Ket{0.0, 1.0}}, {2.0, -0.0}), DomainError);
}

TEST_CASE("frame potentials of reference families") {
  for (int d : {2, 3, 5}) {
    for (double t : {0.5, 1.0, 2.0, 3.7})
      REQUIRE_THAT(frame_potential(basis_set(d), t), WithinAbs(double(d), 1e-10));
  }

  const WeightedStateSet sic = povm_to_design(sic_d3(0.3));
  REQUIRE_THAT(frame_potential(sic, 0.5), WithinAbs(1.0 + 2.0 * std::sqrt(4.0), 1e-10));

  for (int d : {2, 3}) {
    const WeightedStateSet mu = cmub_set(d);
    const double expected = (d + std::pow(double(d), 2.5)) / (d + 1.0);
    REQUIRE_THAT(frame_potential(mu, 0.5), WithinAbs(expected, 1e-10));
  }
}

TEST_CASE("cross potential basics") {
  const WeightedStateSet s = povm_to_design(sic_d3(0.8));
  REQUIRE_THAT(cross_frame_potential(s, s, 0.5), WithinAbs(frame_potential(s, 0.5), 1e-12));

  const WeightedStateSet comp = basis_set(2);
  const WeightedStateSet four = povm_to_design(fourier_basis(2));
  REQUIRE_THAT(cross_frame_potential(comp, four, 0.5), WithinAbs(std::pow(2.0, 1.5), 1e-10));
  REQUIRE_THAT(cross_frame_potential(comp, comp, 0.5), WithinAbs(2.0, 1e-10));
}

TEST_CASE("design strength detection") {
  REQUIRE(is_t_design(basis_set(4), 1).is_design);
  REQUIRE_FALSE(is_t_design(basis_set(2), 2).is_design);

  const WeightedStateSet sic = povm_to_design(sic_d3(1.5));
  REQUIRE(is_t_design(sic, 2).is_design);
  REQUIRE_FALSE(is_t_design(sic, 3).is_design);

  REQUIRE(is_t_design(platonic_design("octahedron"), 3).is_design);
  REQUIRE_FALSE(is_t_design(platonic_design("octahedron"), 4).is_design);
}

TEST_CASE("isotropic-ensemble potential closed form") {
  for (int d = 2; d <= 5; ++d)
    for (int t = 1; t <= 4; ++t) {
      const double expected = double(d) * d / symmetric_dimension(d, t);
      REQUIRE_THAT(haar_frame_potential(d, t), WithinAbs(expected, 1e-12));
    }
  REQUIRE_THAT(haar_frame_potential(2, 0.5), WithinAbs(8.0 / 3.0, 1e-14));
  REQUIRE_THAT(haar_frame_potential(2, 2.0), WithinAbs(4.0 / 3.0, 1e-14));
  REQUIRE_THROWS_AS(haar_frame_potential(2, 0.0), DomainError);
}

TEST_CASE("half-potential interval for 1-designs") {
  const HalfPotentialReport basis = phi_half_bounds_check(basis_set(3));
  REQUIRE(basis.saturates_lower);
  REQUIRE_FALSE(basis.saturates_upper);
  REQUIRE(basis.structurally_basis);
  REQUIRE(basis.structure_matches_saturation);

  const HalfPotentialReport sic = phi_half_bounds_check(povm_to_design(sic_d3(0.2)));
  REQUIRE(sic.saturates_upper);
  REQUIRE_FALSE(sic.saturates_lower);
  REQUIRE(sic.structurally_sic);
  REQUIRE(sic.structure_matches_saturation);

  for (int d : {2, 3}) {
    const HalfPotentialReport mu = phi_half_bounds_check(cmub_set(d));
    REQUIRE_FALSE(mu.saturates_lower);
    REQUIRE_FALSE(mu.saturates_upper);
    REQUIRE(mu.phi_half > mu.lower);
    REQUIRE(mu.phi_half < mu.upper);
  }

  // Not a 1-design: two copies of the same ket.
  REQUIRE_THROWS_AS(phi_half_bounds_check(
                        WeightedStateSet(2, {Ket{1.0, 0.0}, Ket{1.0, 0.0}}, {1.0, 1.0})),
                    NotOneDesignError);
}

TEST_CASE("outcome-limited half-potential ceiling") {
  for (int d : {2, 3, 4}) {
    REQUIRE_THAT(equiangular_bound(d, d), WithinAbs(double(d), 1e-12));
    REQUIRE_THAT(equiangular_bound(d, d * d),
                 WithinAbs(1.0 + (d - 1.0) * std::sqrt(d + 1.0), 1e-12));
    for (int m = d; m < d * d; ++m)
      REQUIRE(equiangular_bound(d, m) < equiangular_bound(d, m + 1));
  }
  REQUIRE_THROWS_AS(equiangular_bound(3, 2), BadCountError);
}

TEST_CASE("zeta special cases and shape") {
  for (int i = 1; i <= 100; ++i) {
    const double a = i / 101.0;
    REQUIRE_THAT(zeta(a, a), WithinAbs(a, 1e-12));
    REQUIRE_THAT(zeta(a, a * a), WithinAbs(std::sqrt(a), 1e-12));
  }

  // Dimension-indexed value used by the half-potential ceiling.
  const double d = 3.0;
  REQUIRE_THAT(d * d * zeta(1.0 / d, 2.0 / (d * (d + 1.0))),
               WithinAbs(1.0 + (d - 1.0) * std::sqrt(d + 1.0), 1e-12));
  REQUIRE_THAT(zeta(1.0 / 3.0, 2.0 / 12.0), WithinAbs(5.0 / 9.0, 1e-12));

  REQUIRE_THROWS_AS(zeta(0.5, 0.6), DomainError);
  REQUIRE_THROWS_AS(zeta(1.0, 0.5), DomainError);

  // Monotone increasing in a, decreasing in b on a feasible grid.
  for (int ia = 1; ia < 20; ++ia)
    for (int ib = 1; ib <= ia; ++ib) {
      const double a = ia / 20.5, b = ib / 20.5;
      if (b + 1e-3 <= a) {
        REQUIRE(zeta(a + 1e-3, b) > zeta(a, b));
        REQUIRE(zeta(a, b + 1e-3) < zeta(a, b));
      }
    }

  // Midpoint concavity spot checks.
  Rng rng(17);
  int checked = 0;
  while (checked < 1000) {
    const double a1 = rng.uniform(0.05, 0.95), b1 = rng.uniform(0.01, a1);
    const double a2 = rng.uniform(0.05, 0.95), b2 = rng.uniform(0.01, a2);
    const double am = (a1 + a2) / 2.0, bm = (b1 + b2) / 2.0;
    REQUIRE(zeta(am, bm) >= (zeta(a1, b1) + zeta(a2, b2)) / 2.0 - 1e-12);
    ++checked;
  }
}

TEST_CASE("half-moment interval on random ensembles") {
  Rng rng(23);
  for (int trial = 0; trial < 10000; ++trial) {
    const int m = 2 + trial % 6;
    MomentEnsemble e;
    double psum = 0.0;
    for (int j = 0; j < m; ++j) {
      e.probabilities.push_back(rng.uniform(0.0, 1.0));
      e.values.push_back(rng.uniform(0.0, 1.0));
      psum += e.probabilities.back();
    }
    for (double& p : e.probabilities) p /= psum;
    const HalfMomentBounds b = half_moment_bounds(e);
    REQUIRE(b.sandwich_ok);
    REQUIRE(b.lower <= b.value + 1e-12);
    REQUIRE(b.value <= b.upper + 1e-12);
  }
}

TEST_CASE("half-moment interval endpoints are achieved") {
  Rng rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = rng.uniform(0.05, 0.9);
    const double b = rng.uniform(a * a, a);  // feasible moment pair
    if (!(a * a < b && b < a)) continue;

    // Mass on {0, b/a} pins the floor.
    MomentEnsemble lower;
    lower.values = {0.0, b / a};
    lower.probabilities = {1.0 - a * a / b, a * a / b};
    const HalfMomentBounds lb = half_moment_bounds(lower);
    REQUIRE_THAT(lb.value, WithinAbs(lb.lower, 1e-10));

    // Mass on {(a-b)/(1-a), 1} pins the ceiling.
    MomentEnsemble upper;
    upper.values = {(a - b) / (1.0 - a), 1.0};
    upper.probabilities = {(1.0 - a) * (1.0 - a) / (1.0 - 2.0 * a + b),
                           (b - a * a) / (1.0 - 2.0 * a + b)};
    const HalfMomentBounds ub = half_moment_bounds(upper);
    REQUIRE_THAT(ub.value, WithinAbs(ub.upper, 1e-10));
  }

  // Uniform value a: the interval collapses onto sqrt(a).
  MomentEnsemble flat;
  flat.values = {0.4, 0.4, 0.4};
  flat.probabilities = {0.2, 0.3, 0.5};
  const HalfMomentBounds fb = half_moment_bounds(flat);
  REQUIRE_THAT(fb.value, WithinAbs(std::sqrt(0.4), 1e-12));
  REQUIRE_THAT(fb.upper, WithinAbs(std::sqrt(0.4), 1e-9));

  MomentEnsemble zero;
  zero.values = {0.0};
  zero.probabilities = {1.0};
  REQUIRE_THROWS_AS(half_moment_bounds(zero), DegenerateMomentsError);
}

TEST_CASE("measurement-level potentials") {
  for (int d : {2, 3, 4})
    REQUIRE_THAT(povm_frame_potential(computational_basis(d), 0.5), WithinAbs(double(d), 1e-10));
  REQUIRE_THAT(povm_frame_potential(sic_d3(0.6), 0.5), WithinAbs(5.0, 1e-10));

  // Equivalent measurements share their potential.
  const Povm sic = sic_d3(0.6);
  std::vector<ComplexMatrix> split;
  split.push_back(Complex(0.5) * sic.element(0));
  split.push_back(Complex(0.5) * sic.element(0));
  for (int j = 1; j < sic.size(); ++j) split.push_back(sic.element(j));
  REQUIRE_THAT(povm_frame_potential(Povm(3, std::move(split)), 1.0),
               WithinAbs(povm_frame_potential(sic, 1.0), 1e-9));

  REQUIRE_THAT(povm_cross_frame_potential(computational_basis(3), fourier_basis(3), 0.5),
               WithinAbs(std::pow(3.0, 1.5), 1e-10));
}

TEST_CASE("design and measurement round trip") {
  const Povm sic = sic_d3(0.5);
  REQUIRE((design_to_povm(povm_to_design(sic)).element(4) - sic.element(4)).max_abs() <= 1e-10);

  const Povm basis = computational_basis(4);
  const Povm back = design_to_povm(povm_to_design(basis));
  for (int j = 0; j < 4; ++j) REQUIRE((back.element(j) - basis.element(j)).max_abs() <= 1e-10);

  for (double w : povm_to_design(sic).weights()) REQUIRE_THAT(w, WithinAbs(1.0 / 3.0, 1e-10));

  REQUIRE_THROWS_AS(povm_to_design(trivial_povm(2)), NotRank1Error);
}

TEST_CASE("random 1-designs satisfy the integer-order potential floor") {
  Rng rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 3;
    const WeightedStateSet s = random_one_design(d, d + 1 + trial % 4, rng);
    REQUIRE(is_t_design(s, 1).is_design);
    for (int t = 1; t <= 3; ++t) {
      const double floor = double(d) * d / symmetric_dimension(d, t);
      REQUIRE(frame_potential(s, t) >= floor - 1e-9);
    }
  }
}

TEST_CASE("cross-potential interval on random 1-design pairs") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 3;
    const WeightedStateSet s = random_one_design(d, d + trial % 3, rng);
    const WeightedStateSet u = random_one_design(d, d + (trial + 1) % 3, rng);
    const double phi = cross_frame_potential(s, u, 0.5);
    REQUIRE(phi >= d - 1e-9);
    REQUIRE(phi <= std::pow(double(d), 1.5) + 1e-9);
  }
}

TEST_CASE("cross potential against a 2-design stays below the SIC ceiling") {
  Rng rng(43);
  const WeightedStateSet sic = povm_to_design(sic_d3(0.9));
  for (int trial = 0; trial < 50; ++trial) {
    const WeightedStateSet s = random_one_design(3, 3 + trial % 4, rng);
    REQUIRE(cross_frame_potential(s, sic, 0.5) <= 1.0 + 2.0 * std::sqrt(4.0) + 1e-9);
  }
}
