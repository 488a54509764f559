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
#include <utility>
#include <vector>

#include "qmeas/builders.hpp"
#include "qmeas/errors.hpp"
#include "qmeas/tolerances.hpp"

namespace qmeas {

/// (alpha, a) parametrization of a two-outcome qubit measurement:
/// elements (1 +- alpha +- a.sigma)/2. alpha is the bias, |a| the sharpness.
struct QubitBinaryPovm {
  double alpha = 0.0;
  std::array<double, 3> a{0.0, 0.0, 0.0};

  QubitBinaryPovm(double alpha_, std::array<double, 3> a_) : alpha(alpha_), a(a_) {
    if (alpha < 0.0 || alpha >= 1.0 || sharpness() > 1.0 - alpha + 1e-14)
      throw DomainError("QubitBinaryPovm: need 0 <= alpha < 1 and |a| <= 1 - alpha");
  }

  double sharpness() const { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }
  bool unbiased() const { return alpha == 0.0; }
  Povm to_povm() const { return qubit_binary_povm(alpha, a); }
};

namespace detail {

inline std::array<double, 3> axpby(double s, const std::array<double, 3>& x, double t,
                                   const std::array<double, 3>& y) {
  return {s * x[0] + t * y[0], s * x[1] + t * y[1], s * x[2] + t * y[2]};
}

inline double length(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

}  // namespace detail

/// Single-copy fidelity (3 + |a|)/6: sharpness alone decides it.
inline double fid1(const QubitBinaryPovm& p) { return (3.0 + p.sharpness()) / 6.0; }

/// Two identical copies: (3 + |a| + alpha |a|)/6. Gains over a single copy
/// exactly when the measurement is both biased and nontrivial.
inline double fid2_iid(const QubitBinaryPovm& p) {
  return (3.0 + p.sharpness() + p.alpha * p.sharpness()) / 6.0;
}

inline bool fid2_iid_gains(const QubitBinaryPovm& p) {
  return p.alpha * p.sharpness() > 0.0;
}

/// Two-copy fidelity of a product of two binary qubit measurements: the
/// four mapped-element norms collapse to four vector norms.
inline double fid2_pair(const QubitBinaryPovm& p, const QubitBinaryPovm& q) {
  using detail::axpby;
  using detail::length;
  const double al = p.alpha, be = q.alpha;
  const double n1 = length(axpby(1.0 + be, p.a, 1.0 + al, q.a));
  const double n2 = length(axpby(1.0 - be, p.a, -(1.0 + al), q.a));
  const double n3 = length(axpby(1.0 + be, p.a, -(1.0 - al), q.a));
  const double n4 = length(axpby(1.0 - be, p.a, 1.0 - al, q.a));
  return 0.5 + (n1 + n2 + n3 + n4) / 24.0;
}

/// Joint measurability of two unbiased binary qubit measurements:
/// |a+b| + |a-b| <= 2. Exact criterion, not merely sufficient.
inline bool qubit_compatible(const QubitBinaryPovm& p, const QubitBinaryPovm& q) {
  if (!p.unbiased() || !q.unbiased())
    throw BiasedInputError("qubit_compatible: criterion applies to unbiased pairs only");
  using detail::axpby;
  using detail::length;
  return length(axpby(1.0, p.a, 1.0, q.a)) + length(axpby(1.0, p.a, -1.0, q.a)) <= 2.0 + 1e-12;
}

/// Two-copy fidelity of two sharp qubit basis measurements at relative
/// Bloch angle phi: (3 + sqrt(1 + |sin phi|))/6.
inline double projective_pair_fidelity(double phi) {
  return (3.0 + std::sqrt(1.0 + std::abs(std::sin(phi)))) / 6.0;
}

inline double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0 && p < 1.0) h = -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
  return h;
}

struct EntropicCurvePoint {
  double phi = 0.0;
  double h_mes = 0.0;         // minimum entropy sum, in bits
  double theta_argmin = 0.0;  // smallest minimizing theta in [0, 2 pi)
};

namespace detail {

inline double entropy_sum(double theta, double phi) {
  const double p = (1.0 + std::cos(theta)) / 2.0;
  const double q = (1.0 + std::cos(theta - phi)) / 2.0;
  return binary_entropy(p) + binary_entropy(q);
}

inline double golden_section(double lo, double hi, double phi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = entropy_sum(c, phi), fd = entropy_sum(d, phi);
  while (b - a > kTol.theta_refine) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = entropy_sum(c, phi);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = entropy_sum(d, phi);
    }
  }
  return (a + b) / 2.0;
}

}  // namespace detail

/// Minimum of the entropy sum over all pure states. The objective is
/// smooth but multi-modal for wide angles, so a dense grid locates every
/// basin before golden-section refinement; near-ties resolve to the
/// smallest angle.
inline EntropicCurvePoint minimum_entropy_sum(double phi) {
  const int n = kTol.theta_grid;
  const double step = 2.0 * kPi / n;
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) values[i] = detail::entropy_sum(i * step, phi);

  double best_value = values[0];
  for (int i = 1; i < n; ++i) best_value = std::min(best_value, values[i]);

  EntropicCurvePoint out;
  out.phi = phi;
  out.h_mes = best_value;
  out.theta_argmin = 2.0 * kPi;
  const double basin_margin = 1e-6;
  for (int i = 0; i < n; ++i) {
    const double prev = values[(i + n - 1) % n];
    const double next = values[(i + 1) % n];
    if (values[i] > prev || values[i] > next) continue;           // not a local minimum
    if (values[i] > best_value + basin_margin) continue;          // not competitive
    const double theta = detail::golden_section((i - 1) * step, (i + 1) * step, phi);
    const double value = detail::entropy_sum(theta, phi);
    double wrapped = std::fmod(theta + 2.0 * kPi, 2.0 * kPi);
    if (2.0 * kPi - wrapped < 1e-8) wrapped = 0.0;
    if (value < out.h_mes - 1e-12) {
      out.h_mes = value;
      out.theta_argmin = wrapped;
    } else if (value <= out.h_mes + 1e-12) {
      out.theta_argmin = std::min(out.theta_argmin, wrapped);
    }
  }
  return out;
}

/// Samples phi over [0, pi/2] and pairs the product-measurement fidelity
/// with the minimum entropy sum. Both coordinates rise together.
inline std::vector<std::pair<double, double>> fidelity_vs_entropy_curve(int n_points) {
  if (n_points < 2) throw DomainError("fidelity_vs_entropy_curve: need at least two samples");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double phi = (kPi / 2.0) * i / (n_points - 1);
    curve.emplace_back(projective_pair_fidelity(phi), minimum_entropy_sum(phi).h_mes);
  }
  return curve;
}

}  // namespace qmeas
