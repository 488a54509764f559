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
#include <string>
#include <vector>

#include "qmeas/builders.hpp"
#include "qmeas/designs.hpp"
#include "qmeas/fidelity.hpp"
#include "qmeas/povm.hpp"
#include "qmeas/rng.hpp"

namespace qmeas::verify {

struct Check {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // most adverse margin observed (sign depends on check)
  std::string detail;
};

namespace detail {

inline void record(std::vector<Check>& out, const std::string& name, bool passed, double worst,
                   const std::string& detail = "") {
  out.push_back({name, passed, worst, detail});
}

/// Rank-1 measurement conjugated by a random unitary.
inline Povm rotated(const Povm& p, Rng& rng) {
  const ComplexMatrix u = rng.unitary(p.dim());
  const ComplexMatrix udag = u.adjoint();
  std::vector<ComplexMatrix> elements;
  elements.reserve(p.size());
  for (const ComplexMatrix& a : p.elements()) elements.push_back(u * a * udag);
  return Povm(p.dim(), std::move(elements), p.labels());
}

/// Measurement diagonal in the eigenbasis of the given projective one:
/// random diagonal weights distributed across outcomes, column-stochastic.
inline Povm commuting_partner(const Povm& projective, Rng& rng) {
  const int m = projective.size();
  const int outcomes = 2 + rng.uniform_int(0, 1);
  std::vector<double> lambda(static_cast<size_t>(outcomes) * m);
  for (int k = 0; k < m; ++k) {
    double colsum = 0.0;
    std::vector<double> col(outcomes);
    for (int j = 0; j < outcomes; ++j) {
      col[j] = rng.uniform(0.05, 1.0);
      colsum += col[j];
    }
    for (int j = 0; j < outcomes; ++j) lambda[static_cast<size_t>(j) * m + k] = col[j] / colsum;
  }
  return coarse_grain(projective, StochasticMatrix(outcomes, m, std::move(lambda)));
}

}  // namespace detail

/// Ceiling and floor checks for two-copy fidelities on seeded random
/// measurements at d = 2..4, plus exact saturation on the structured
/// families. One Check per sub-criterion.
inline std::vector<Check> bounds_suite(std::uint64_t seed, int trials) {
  std::vector<Check> out;
  Rng rng(seed);

  for (int d = 2; d <= 4; ++d) {
    const FidelityConstants c = fidelity_constants(d);

    double sandwich_low = 1.0, sandwich_high = 0.0;  // F(A x A) extremes
    double worst_equality_gap = 0.0;                 // potential bound vs engine, rank-1
    double worst_sep_excess = -1.0;                  // F(A x B) - f2_sep
    double worst_commuting_excess = -1.0;            // commuting pairs vs f1
    double worst_lower_gap = 0.0;                    // rank-1 floor violations
    double min_noncommuting_gain = 1.0;              // strictness of the floor
    bool ok = true;

    for (int trial = 0; trial < trials; ++trial) {
      const Povm a = random_rank1_povm(d, d + rng.uniform_int(0, d), rng.engine()());
      const Povm b = random_rank1_povm(d, d + rng.uniform_int(0, d), rng.engine()());

      const double faa = estimation_fidelity({a, a}).value;
      sandwich_low = std::min(sandwich_low, faa);
      sandwich_high = std::max(sandwich_high, faa);
      ok = ok && faa >= c.f1 - 1e-9 && faa <= c.f2_iid + 1e-9;

      // Potential-based ceiling is an identity for rank-1 inputs.
      const double fab = estimation_fidelity({a, b}).value;
      worst_equality_gap = std::max(
          worst_equality_gap, std::abs(fab - cross_potential_fidelity_bound(a, b)));
      worst_equality_gap = std::max(
          worst_equality_gap, std::abs(faa - cross_potential_fidelity_bound(a, a)));
      ok = ok && worst_equality_gap < 1e-9;

      worst_sep_excess = std::max(worst_sep_excess, fab - c.f2_sep);
      ok = ok && fab <= c.f2_sep + 1e-9;

      // Floor for a rank-1 factor; random pairs essentially never commute.
      worst_lower_gap = std::max(worst_lower_gap, c.f1 - fab);
      min_noncommuting_gain = std::min(min_noncommuting_gain, fab - c.f1);
      ok = ok && fab >= c.f1 - 1e-9;

      // Commuting pairs never beat the single-copy ceiling, with equality.
      const Povm proj = detail::rotated(computational_basis(d), rng);
      const Povm diag = detail::commuting_partner(proj, rng);
      const double f_comm = estimation_fidelity({proj, diag}).value;
      worst_commuting_excess = std::max(worst_commuting_excess, f_comm - c.f1);
      ok = ok && commute(proj, diag) && std::abs(f_comm - c.f1) <= 1e-9;

      // Mixed-rank inputs still respect the separable and identical ceilings.
      const Povm g = random_povm(d, 2 + rng.uniform_int(0, 2), rng.engine()());
      const double fgg = estimation_fidelity({g, g}).value;
      const double fga = estimation_fidelity({g, a}).value;
      ok = ok && fgg <= c.f2_iid + 1e-9 && fga <= c.f2_sep + 1e-9;
    }

    detail::record(out, "d=" + std::to_string(d) + ".two_copy_sandwich", ok,
                   sandwich_high - c.f2_iid,
                   "range [" + std::to_string(sandwich_low) + ", " + std::to_string(sandwich_high) + "]");
    detail::record(out, "d=" + std::to_string(d) + ".potential_equality_rank1",
                   worst_equality_gap < 1e-9, worst_equality_gap);
    detail::record(out, "d=" + std::to_string(d) + ".separable_ceiling",
                   worst_sep_excess <= 1e-9, worst_sep_excess);
    detail::record(out, "d=" + std::to_string(d) + ".commuting_ceiling",
                   std::abs(worst_commuting_excess) <= 1e-9, worst_commuting_excess);
    detail::record(out, "d=" + std::to_string(d) + ".rank1_floor",
                   worst_lower_gap <= 1e-9 && min_noncommuting_gain > 1e-9, worst_lower_gap,
                   "min gain over floor " + std::to_string(min_noncommuting_gain));
  }

  // Exact saturation of the family sums on the structured families.
  {
    const Povm sic2 = sic_d2_tetrahedron();
    const FamilySumReport r2 = family_sum_criteria({sic2, sic2, sic2});
    detail::record(out, "family.identical_sic_d2", r2.all_saturated,
                   r2.sum_all - r2.bound_all);
    const Povm sic3a = sic_d3(0.3);
    const FamilySumReport r3 = family_sum_criteria({sic3a, sic3a});
    detail::record(out, "family.identical_sic_d3", r3.all_saturated,
                   r3.sum_all - r3.bound_all);
    const FamilySumReport m2 = family_sum_criteria(cmub_family(2));
    detail::record(out, "family.cmum_d2", m2.offdiag_saturated,
                   m2.sum_offdiag - m2.bound_offdiag);
    const FamilySumReport m3 = family_sum_criteria(cmub_family(3));
    detail::record(out, "family.cmum_d3", m3.offdiag_saturated,
                   m3.sum_offdiag - m3.bound_offdiag);
  }
  return out;
}

/// Closed-form maps against the permutation-sum definition, and the
/// collective-measurement fidelity window.
inline std::vector<Check> oracle_suite(std::uint64_t seed, int tuples_per_case) {
  std::vector<Check> out;
  Rng rng(seed);

  for (int d = 2; d <= 3; ++d) {
    double worst = 0.0;
    for (int t = 0; t < tuples_per_case; ++t) {
      const ComplexMatrix a = rng.psd(d, rng.uniform_int(1, d));
      const ComplexMatrix b = rng.psd(d, rng.uniform_int(1, d));
      const ComplexMatrix c = rng.psd(d, rng.uniform_int(1, d));
      worst = std::max(worst, (q_map(a) - q_map_oracle({a})).max_abs());
      worst = std::max(worst, (q_map(a, b) - q_map_oracle({a, b})).max_abs());
      worst = std::max(worst, (q_map(a, b, c) - q_map_oracle({a, b, c})).max_abs());
    }
    detail::record(out, "d=" + std::to_string(d) + ".closed_form_vs_oracle",
                   worst < kTol.oracle_agreement, worst);
  }

  // Collective measurements on N copies stay inside [1/d, (N+1)/(N+d)].
  {
    const int d = 2;
    bool ok = true;
    double worst_low = 0.0, worst_high = 0.0;
    for (int n = 1; n <= 3; ++n) {
      const int dim = static_cast<int>(integer_pow(d, n));
      for (int trial = 0; trial < 50; ++trial) {
        const Povm p = random_povm(dim, 2 + rng.uniform_int(0, 3), rng.engine()());
        const double f = estimation_fidelity_collective(p.elements(), d, n).value;
        const double lo = 1.0 / d, hi = (n + 1.0) / (n + d);
        worst_low = std::max(worst_low, lo - f);
        worst_high = std::max(worst_high, f - hi);
        ok = ok && f >= lo - 1e-9 && f <= hi + 1e-9;
      }
    }
    detail::record(out, "collective.fidelity_window", ok, std::max(worst_low, worst_high));
  }
  return out;
}

/// Signature classification of rotated reference families.
inline std::vector<Check> table1_suite(std::uint64_t seed, int cases) {
  std::vector<Check> out;
  Rng rng(seed);
  int correct = 0;
  for (int i = 0; i < cases; ++i) {
    const int pick = i % 5;
    bool good = false;
    if (pick == 0) {
      const Povm p = detail::rotated(computational_basis(2 + (i % 3)), rng);
      good = classify_by_fidelity_signature(p) == "rank-1 projective";
    } else if (pick == 1) {
      const Povm p = detail::rotated(sic_d2_tetrahedron(), rng);
      good = classify_by_fidelity_signature(p) == "SIC";
    } else if (pick == 2) {
      const Povm p = detail::rotated(sic_d3(rng.uniform(0.0, 2.0 * kPi)), rng);
      good = classify_by_fidelity_signature(p) == "SIC";
    } else if (pick == 3) {
      const int d = 2 + (i % 3);
      const ComplexMatrix u = rng.unitary(d);
      const ComplexMatrix udag = u.adjoint();
      auto rotate = [&](const Povm& p) {
        std::vector<ComplexMatrix> e;
        for (const ComplexMatrix& a : p.elements()) e.push_back(u * a * udag);
        return Povm(d, std::move(e));
      };
      good = classify_by_fidelity_signature(rotate(computational_basis(d)),
                                            rotate(fourier_basis(d))) == "MU rank-1 projective";
    } else {
      const Povm p = detail::rotated(computational_basis(2 + (i % 3)), rng);
      good = classify_by_fidelity_signature(p, p) == "identical rank-1 projective";
    }
    if (good) ++correct;
  }
  detail::record(out, "table_rows_recovered", correct == cases,
                 static_cast<double>(cases - correct),
                 std::to_string(correct) + "/" + std::to_string(cases));
  return out;
}

}  // namespace qmeas::verify
