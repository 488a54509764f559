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
#include <string>
#include <utility>
#include <vector>

#include "qmeas/complex_matrix.hpp"
#include "qmeas/errors.hpp"
#include "qmeas/hermitian_eigen.hpp"
#include "qmeas/povm.hpp"
#include "qmeas/rng.hpp"
#include "qmeas/symmetric_subspace.hpp"
#include "qmeas/tolerances.hpp"

namespace qmeas {

/// Weighted set of unit kets with positive weights summing to d.
/// Sets with that normalization resolve the identity candidate-wise and
/// are interchangeable with rank-1 measurements.
class WeightedStateSet {
 public:
  WeightedStateSet(int dim, std::vector<Ket> states, std::vector<double> weights)
      : dim_(dim), states_(std::move(states)), weights_(std::move(weights)) {
    if (states_.size() != weights_.size())
      throw DimMismatchError("WeightedStateSet: count mismatch between states and weights");
    double sum = 0.0;
    for (size_t j = 0; j < states_.size(); ++j) {
      if (static_cast<int>(states_[j].size()) != dim_)
        throw DimMismatchError("WeightedStateSet: ket dimension mismatch");
      if (std::abs(norm(states_[j]) - 1.0) > kTol.ket_normalization)
        throw DomainError("WeightedStateSet: ket " + std::to_string(j) + " is not normalized");
      if (weights_[j] <= 0.0) throw DomainError("WeightedStateSet: weights must be positive");
      sum += weights_[j];
    }
    if (std::abs(sum - dim_) > kTol.weight_sum)
      throw DomainError("WeightedStateSet: weights sum to " + std::to_string(sum) +
                        ", expected " + std::to_string(dim_));
  }

  /// Uniform weights d/m.
  static WeightedStateSet uniform(int dim, std::vector<Ket> states) {
    const double w = static_cast<double>(dim) / static_cast<double>(states.size());
    return WeightedStateSet(dim, std::move(states),
                            std::vector<double>(states.size(), w));
  }

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(states_.size()); }
  const Ket& state(int j) const { return states_[j]; }
  double weight(int j) const { return weights_[j]; }
  const std::vector<Ket>& states() const { return states_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  int dim_;
  std::vector<Ket> states_;
  std::vector<double> weights_;
};

namespace detail {

/// x^t with the convention 0^t = 0 for t > 0; clamps rounding-negative x.
inline double real_power(double x, double t) {
  if (x <= 0.0) return 0.0;
  return std::pow(x, t);
}

}  // namespace detail

/// sum_{jk} w_j w_k |<psi_j|psi_k>|^{2t}, defined for any real t > 0.
inline double frame_potential(const WeightedStateSet& s, double t) {
  if (t <= 0.0) throw DomainError("frame_potential: t must be positive");
  double total = 0.0;
  for (int j = 0; j < s.size(); ++j)
    for (int k = 0; k < s.size(); ++k) {
      const double x = std::norm(inner(s.state(j), s.state(k)));
      total += s.weight(j) * s.weight(k) * detail::real_power(x, t);
    }
  return total;
}

inline double cross_frame_potential(const WeightedStateSet& s, const WeightedStateSet& u, double t) {
  if (s.dim() != u.dim()) throw DimMismatchError("cross_frame_potential: dimension mismatch");
  if (t <= 0.0) throw DomainError("cross_frame_potential: t must be positive");
  double total = 0.0;
  for (int j = 0; j < s.size(); ++j)
    for (int k = 0; k < u.size(); ++k) {
      const double x = std::norm(inner(s.state(j), u.state(k)));
      total += s.weight(j) * u.weight(k) * detail::real_power(x, t);
    }
  return total;
}

struct DesignCheck {
  bool is_design = false;
  double residual = 0.0;  // frame potential minus the design floor d^2/D_t
};

/// Frame-potential criterion: the t-th potential of a weighted set never
/// drops below d^2/D_t, with equality exactly on t-designs.
inline DesignCheck is_t_design(const WeightedStateSet& s, int t) {
  if (t < 1) throw DomainError("is_t_design: t must be a positive integer");
  const double floor = static_cast<double>(s.dim()) * s.dim() / symmetric_dimension(s.dim(), t);
  DesignCheck check;
  check.residual = frame_potential(s, t) - floor;
  check.is_design = check.residual <= kTol.design_residual;
  return check;
}

/// Frame potential of the unitarily invariant state ensemble:
/// d^2 (d-1)! / [(t+1)(t+2)...(t+d-1)], exact for any real t > 0.
inline double haar_frame_potential(int d, double t) {
  if (t <= 0.0) throw DomainError("haar_frame_potential: t must be positive");
  if (d < 1) throw DomainError("haar_frame_potential: d must be positive");
  double value = static_cast<double>(d) * d;
  for (int k = 1; k <= d - 1; ++k) value *= static_cast<double>(k) / (t + k);
  return value;
}

/// Largest half-potential of a 1-design with m elements:
/// d^2/m + (d/m) sqrt(d (m-1) (m-d)).
inline double equiangular_bound(int d, int m) {
  if (m < d) throw BadCountError("equiangular_bound: need at least d states");
  const double dd = d, mm = m;
  return dd * dd / mm + dd / mm * std::sqrt(dd * (mm - 1.0) * (mm - dd));
}

/// Tight upper bound for the half-moment of a [0,1] random variable with
/// first moment a and second moment b; requires 0 < b <= a < 1.
inline double zeta(double a, double b) {
  if (!(0.0 < b && b <= a && a < 1.0))
    throw DomainError("zeta: arguments must satisfy 0 < b <= a < 1");
  // Form with an always-positive denominator.
  const double root = std::sqrt((1.0 - a) * std::max(a - b, 0.0));
  const double denom_sqrt = std::sqrt(1.0 - a) + std::sqrt(std::max(a - b, 0.0));
  return (2.0 * a - a * a - b + (1.0 + a) * root) / (denom_sqrt * denom_sqrt);
}

/// Discrete distribution on [0,1] used for moment-interval analysis.
struct MomentEnsemble {
  std::vector<double> probabilities;  // nonnegative, sum 1
  std::vector<double> values;         // each in [0,1]
};

struct HalfMomentBounds {
  double lower = 0.0;  // a sqrt(a/b)
  double value = 0.0;  // sum p_j sqrt(x_j)
  double upper = 0.0;  // zeta(a, b)
  double first_moment = 0.0;
  double second_moment = 0.0;
  bool sandwich_ok = false;
};

inline HalfMomentBounds half_moment_bounds(const MomentEnsemble& e) {
  if (e.probabilities.size() != e.values.size())
    throw DimMismatchError("half_moment_bounds: count mismatch");
  double psum = 0.0, a = 0.0, b = 0.0, value = 0.0;
  for (size_t j = 0; j < e.values.size(); ++j) {
    const double p = e.probabilities[j], x = e.values[j];
    if (p < 0.0) throw DomainError("half_moment_bounds: negative probability");
    if (x < 0.0 || x > 1.0) throw DomainError("half_moment_bounds: value outside [0,1]");
    psum += p;
    a += p * x;
    b += p * x * x;
    value += p * std::sqrt(x);
  }
  if (std::abs(psum - 1.0) > kTol.stochastic_column)
    throw DomainError("half_moment_bounds: probabilities sum to " + std::to_string(psum));
  if (b <= 0.0) throw DegenerateMomentsError("half_moment_bounds: vanishing second moment");

  HalfMomentBounds out;
  out.first_moment = a;
  out.second_moment = b;
  out.value = value;
  out.lower = a * std::sqrt(a / b);
  out.upper = a >= 1.0 - 1e-15 ? 1.0 : zeta(a, std::min(b, a));
  out.sandwich_ok = out.lower <= out.value + 1e-12 && out.value <= out.upper + 1e-12;
  return out;
}

struct HalfPotentialReport {
  double phi_half = 0.0;
  double lower = 0.0;            // d
  double upper = 0.0;            // 1 + (d-1) sqrt(d+1)
  bool saturates_lower = false;
  bool saturates_upper = false;
  bool structurally_basis = false;  // m == d with orthonormal kets
  bool structurally_sic = false;    // m == d^2 with flat pairwise overlaps
  bool structure_matches_saturation = false;
};

namespace detail {

inline bool orthonormal_basis_structure(const WeightedStateSet& s) {
  if (s.size() != s.dim()) return false;
  for (int j = 0; j < s.size(); ++j)
    for (int k = j + 1; k < s.size(); ++k)
      if (std::abs(inner(s.state(j), s.state(k))) > kTol.element_match) return false;
  return true;
}

inline bool sic_structure(const WeightedStateSet& s) {
  const int d = s.dim();
  if (s.size() != d * d) return false;
  const double target = 1.0 / (d + 1.0);
  for (int j = 0; j < s.size(); ++j)
    for (int k = j + 1; k < s.size(); ++k)
      if (std::abs(std::norm(inner(s.state(j), s.state(k))) - target) > kTol.element_match)
        return false;
  return true;
}

}  // namespace detail

/// Verifies the half-potential interval for a 1-design and reports which
/// side saturates, cross-checked against the structural basis/SIC tests.
inline HalfPotentialReport phi_half_bounds_check(const WeightedStateSet& s) {
  if (!is_t_design(s, 1).is_design)
    throw NotOneDesignError("phi_half_bounds_check: input is not a 1-design");
  const int d = s.dim();
  HalfPotentialReport report;
  report.phi_half = frame_potential(s, 0.5);
  report.lower = d;
  report.upper = 1.0 + (d - 1.0) * std::sqrt(d + 1.0);
  report.saturates_lower = std::abs(report.phi_half - report.lower) <= kTol.saturation;
  report.saturates_upper = std::abs(report.phi_half - report.upper) <= kTol.saturation;
  report.structurally_basis = detail::orthonormal_basis_structure(s);
  report.structurally_sic = detail::sic_structure(s);
  report.structure_matches_saturation = (report.saturates_lower == report.structurally_basis) &&
                                        (report.saturates_upper == report.structurally_sic);
  return report;
}

/// sum_{jk} [tr(A_j B_k)]^t / [tr(A_j) tr(B_k)]^{t-1}.
inline double povm_cross_frame_potential(const Povm& p, const Povm& q, double t) {
  if (p.dim() != q.dim()) throw DimMismatchError("povm_cross_frame_potential: dimension mismatch");
  if (t <= 0.0) throw DomainError("povm_cross_frame_potential: t must be positive");
  double total = 0.0;
  for (const ComplexMatrix& a : p.elements())
    for (const ComplexMatrix& b : q.elements()) {
      const double overlap = std::max(real_overlap(a, b), 0.0);
      const double traces = std::real(a.trace()) * std::real(b.trace());
      total += detail::real_power(overlap, t) / detail::real_power(traces, t - 1.0);
    }
  return total;
}

inline double povm_frame_potential(const Povm& p, double t) {
  return povm_cross_frame_potential(p, p, t);
}

/// Rank-1 measurement -> weighted state set (weights are element traces).
inline WeightedStateSet povm_to_design(const Povm& p) {
  if (!is_rank1(p)) throw NotRank1Error("povm_to_design: measurement is not rank 1");
  std::vector<Ket> states;
  std::vector<double> weights;
  states.reserve(p.size());
  for (const ComplexMatrix& a : p.elements()) {
    const EigenDecomposition e = hermitian_eigen(a);
    states.push_back(eigenvector_column(e, 0));
    weights.push_back(std::real(a.trace()));
  }
  return WeightedStateSet(p.dim(), std::move(states), std::move(weights));
}

inline Povm design_to_povm(const WeightedStateSet& s) {
  std::vector<ComplexMatrix> elements;
  elements.reserve(s.size());
  for (int j = 0; j < s.size(); ++j)
    elements.push_back(Complex(s.weight(j)) * projector(s.state(j)));
  return Povm(s.dim(), std::move(elements));
}

/// Random 1-design: conditioning by S^{-1/2} makes the resolution of the
/// identity exact rather than approximate.
inline WeightedStateSet random_one_design(int d, int m, Rng& rng) {
  if (m < d) throw BadCountError("random_one_design: need at least d states");
  std::vector<Ket> raw(m);
  std::vector<double> draw(m);
  ComplexMatrix s(d);
  for (int j = 0; j < m; ++j) {
    raw[j] = rng.ket(d);
    draw[j] = rng.uniform(0.5, 1.5);
    s += Complex(draw[j]) * projector(raw[j]);
  }
  const ComplexMatrix cond = inverse_sqrt(s);
  std::vector<Ket> states(m);
  std::vector<double> weights(m);
  for (int j = 0; j < m; ++j) {
    Ket v = cond * raw[j];
    const double n2 = std::real(inner(v, v));
    states[j] = normalized(std::move(v));
    weights[j] = draw[j] * n2;
  }
  // The conditioned weights sum to d up to eigensolver rounding; rescale
  // the tail residue onto all weights to satisfy the strict invariant.
  double sum = 0.0;
  for (double w : weights) sum += w;
  for (double& w : weights) w *= d / sum;
  return WeightedStateSet(d, std::move(states), std::move(weights));
}

}  // namespace qmeas
