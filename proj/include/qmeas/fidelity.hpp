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
#include <vector>

#include "qmeas/complex_matrix.hpp"
#include "qmeas/designs.hpp"
#include "qmeas/errors.hpp"
#include "qmeas/hermitian_eigen.hpp"
#include "qmeas/povm.hpp"
#include "qmeas/symmetric_subspace.hpp"
#include "qmeas/tolerances.hpp"

namespace qmeas {

// ---------------------------------------------------------------------------
// The Q map: Q(O) = (N+1)! tr_{1..N}[ P_{N+1} (O x 1) ] for an operator O on
// N copies. Its per-element operator norms determine the highest average
// estimation fidelity a measurement can reach on Haar-random pure states.
// Closed forms exist up to three copies; the permutation-sum route below is
// the definition itself and doubles as the oracle for the closed forms.
// ---------------------------------------------------------------------------

/// One copy: Q(A) = tr(A) + A.
inline ComplexMatrix q_map(const ComplexMatrix& a) {
  const double ta = std::real(a.trace());
  return Complex(ta) * ComplexMatrix::identity(a.dim()) + a;
}

/// Two copies: the six-term expansion.
inline ComplexMatrix q_map(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double ta = std::real(a.trace());
  const double tb = std::real(b.trace());
  const double tab = real_overlap(a, b);
  ComplexMatrix out = Complex(ta * tb + tab) * ComplexMatrix::identity(a.dim());
  out += Complex(tb) * a;
  out += Complex(ta) * b;
  out += a * b + b * a;
  return out;
}

/// Three copies: the twenty-four-term expansion.
inline ComplexMatrix q_map(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
  const double ta = std::real(a.trace());
  const double tb = std::real(b.trace());
  const double tc = std::real(c.trace());
  const double tab = real_overlap(a, b);
  const double tbc = real_overlap(b, c);
  const double tca = real_overlap(c, a);

  const ComplexMatrix ab = a * b;
  const ComplexMatrix ac = a * c;
  const ComplexMatrix bc = b * c;
  const ComplexMatrix abc = ab * c;
  const ComplexMatrix acb = ac * b;
  const Complex tabc = abc.trace();
  const Complex tacb = acb.trace();

  // tr(ABC) + tr(ACB) is real for Hermitian inputs; pin it to keep the
  // output exactly Hermitian.
  const double triple_traces = std::real(tabc + tacb);

  ComplexMatrix out = Complex(ta * tb * tc + tab * tc + tbc * ta + tca * tb + triple_traces) *
                      ComplexMatrix::identity(a.dim());
  out += Complex(tb * tc + tbc) * a;
  out += Complex(tc * ta + tca) * b;
  out += Complex(ta * tb + tab) * c;
  out += Complex(tc) * (ab + ab.adjoint());
  out += Complex(tb) * (ac + ac.adjoint());
  out += Complex(ta) * (bc + bc.adjoint());
  // All six orderings of the triple product; the reversals are adjoints.
  const ComplexMatrix bac = b * ac;
  out += abc + abc.adjoint() + acb + acb.adjoint() + bac + bac.adjoint();
  return out;
}

/// Permutation-sum route for an operator on N copies, any N under the
/// resource guard. This is the defining expression, used as the oracle.
inline ComplexMatrix q_map_collective(const ComplexMatrix& op, int d, int copies) {
  const std::int64_t full = integer_pow(d, copies + 1);
  if (full > kTol.max_tensor_dim)
    throw TooLargeError("q_map_collective: d^(N+1) = " + std::to_string(full) +
                        " exceeds the resource guard");
  const SymmetricProjector proj = symmetric_projector(d, copies + 1);
  const ComplexMatrix lifted = kron(op, ComplexMatrix::identity(d));
  double factorial = 1.0;
  for (int k = 2; k <= copies + 1; ++k) factorial *= k;
  return Complex(factorial) * partial_trace_first_n(proj.matrix * lifted, d, copies);
}

/// Oracle on a product operator given as its single-copy factors.
inline ComplexMatrix q_map_oracle(const std::vector<ComplexMatrix>& ops) {
  if (ops.empty()) throw DomainError("q_map_oracle: need at least one factor");
  ComplexMatrix tensor = ops.front();
  for (size_t i = 1; i < ops.size(); ++i) tensor = kron(tensor, ops[i]);
  return q_map_collective(tensor, ops.front().dim(), static_cast<int>(ops.size()));
}

// ---------------------------------------------------------------------------
// Estimation fidelity
// ---------------------------------------------------------------------------

struct FidelityConstants {
  int d = 0;
  double f1 = 0.0;       // one-copy ceiling, 2/(d+1)
  double f2_iid = 0.0;   // two-copy ceiling for identical independent pairs
  double f2_sep = 0.0;   // two-copy ceiling for separable measurements
  double f3_proj = 0.0;  // three identical basis measurements

  double n_copy_upper_bound(int n) const { return (n + 1.0) / (n + d); }
};

inline FidelityConstants fidelity_constants(int d) {
  FidelityConstants c;
  c.d = d;
  const double dd = d;
  c.f1 = 2.0 / (dd + 1.0);
  c.f2_iid = 2.0 * (dd * dd + dd + 1.0 + (dd - 1.0) * std::sqrt(dd + 1.0)) /
             (dd * (dd + 1.0) * (dd + 2.0));
  c.f2_sep = 2.0 * (dd + 1.0 + std::sqrt(dd)) / ((dd + 1.0) * (dd + 2.0));
  c.f3_proj = 2.0 * (dd + 5.0) / ((dd + 2.0) * (dd + 3.0));
  return c;
}

struct FidelityResult {
  double value = 0.0;
  std::vector<double> per_element_norms;  // lexicographic in element tuples
  int copies = 0;
  double denominator = 0.0;  // d (d+1) ... (d+N)
};

namespace detail {

inline double fidelity_denominator(int d, int copies) {
  double v = 1.0;
  for (int k = 0; k <= copies; ++k) v *= (d + k);
  return v;
}

template <typename NormFn>
inline FidelityResult accumulate_fidelity(int d, int copies, std::int64_t tuple_count, NormFn&& norm_of) {
  FidelityResult result;
  result.copies = copies;
  result.denominator = fidelity_denominator(d, copies);
  result.per_element_norms.reserve(static_cast<size_t>(tuple_count));
  double sum = 0.0;
  for (std::int64_t t = 0; t < tuple_count; ++t) {
    const double n = norm_of(t);
    result.per_element_norms.push_back(n);
    sum += n;
  }
  result.value = sum / result.denominator;
  return result;
}

}  // namespace detail

/// Fidelity of the product measurement factor_1 x ... x factor_N, computed
/// element-pair-wise from the closed forms for N <= 3 (the product POVM is
/// never materialized) and from the permutation sum otherwise. The norm sum
/// runs in a fixed lexicographic order so results are bitwise reproducible.
inline FidelityResult estimation_fidelity(const std::vector<Povm>& factors, bool force_oracle = false) {
  if (factors.empty()) throw DomainError("estimation_fidelity: need at least one factor");
  const int d = factors.front().dim();
  for (const Povm& p : factors)
    if (p.dim() != d) throw DimMismatchError("estimation_fidelity: factors on different spaces");
  const int n = static_cast<int>(factors.size());

  std::int64_t tuples = 1;
  for (const Povm& p : factors) tuples *= p.size();

  std::vector<int> index(n, 0);
  auto tuple_at = [&](std::int64_t t) {
    for (int i = n - 1; i >= 0; --i) {
      index[i] = static_cast<int>(t % factors[i].size());
      t /= factors[i].size();
    }
  };

  if (!force_oracle && n <= 3) {
    return detail::accumulate_fidelity(d, n, tuples, [&](std::int64_t t) {
      tuple_at(t);
      if (n == 1) return operator_norm(q_map(factors[0].element(index[0])));
      if (n == 2)
        return operator_norm(q_map(factors[0].element(index[0]), factors[1].element(index[1])));
      return operator_norm(q_map(factors[0].element(index[0]), factors[1].element(index[1]),
                                 factors[2].element(index[2])));
    });
  }

  return detail::accumulate_fidelity(d, n, tuples, [&](std::int64_t t) {
    tuple_at(t);
    std::vector<ComplexMatrix> ops;
    ops.reserve(n);
    for (int i = 0; i < n; ++i) ops.push_back(factors[i].element(index[i]));
    return operator_norm(q_map_oracle(ops));
  });
}

inline FidelityResult estimation_fidelity(const Povm& p, int copies = 1, bool force_oracle = false) {
  return estimation_fidelity(std::vector<Povm>(copies, p), force_oracle);
}

/// Fidelity of an arbitrary measurement on N copies, given its elements on
/// the N-fold space. Always goes through the permutation sum.
inline FidelityResult estimation_fidelity_collective(const std::vector<ComplexMatrix>& elements,
                                                     int d, int copies) {
  if (elements.empty()) throw DomainError("estimation_fidelity_collective: no elements");
  return detail::accumulate_fidelity(d, copies, static_cast<std::int64_t>(elements.size()),
                                     [&](std::int64_t t) {
                                       return operator_norm(q_map_collective(elements[t], d, copies));
                                     });
}

// ---------------------------------------------------------------------------
// Optimal estimators
// ---------------------------------------------------------------------------

struct EstimatorSet {
  std::vector<Ket> estimators;   // one per element tuple, lexicographic
  std::vector<bool> degenerate;  // top eigenvalue within tolerance of second
  FidelityResult fidelity;
};

/// Best single-copy estimate per outcome: the top eigenvector of the mapped
/// element. Ties within kTol.degenerate_top are flagged as non-unique.
inline EstimatorSet optimal_estimators(const Povm& p, int copies) {
  const std::vector<Povm> factors(copies, p);
  EstimatorSet out;
  out.fidelity = estimation_fidelity(factors);

  std::int64_t tuples = 1;
  for (int i = 0; i < copies; ++i) tuples *= p.size();
  std::vector<int> index(copies, 0);
  for (std::int64_t t = 0; t < tuples; ++t) {
    std::int64_t rem = t;
    for (int i = copies - 1; i >= 0; --i) {
      index[i] = static_cast<int>(rem % p.size());
      rem /= p.size();
    }
    ComplexMatrix q;
    if (copies == 1)
      q = q_map(p.element(index[0]));
    else if (copies == 2)
      q = q_map(p.element(index[0]), p.element(index[1]));
    else if (copies == 3)
      q = q_map(p.element(index[0]), p.element(index[1]), p.element(index[2]));
    else {
      std::vector<ComplexMatrix> ops;
      for (int i = 0; i < copies; ++i) ops.push_back(p.element(index[i]));
      q = q_map_oracle(ops);
    }
    const EigenDecomposition e = hermitian_eigen(q);
    out.estimators.push_back(eigenvector_column(e, 0));
    out.degenerate.push_back(e.eigenvalues.size() > 1 &&
                             e.eigenvalues[0] - e.eigenvalues[1] <= kTol.degenerate_top);
  }
  return out;
}

/// Average fidelity achieved by explicit estimators; reproduces the
/// optimum when each estimator spans the top eigenspace.
inline double average_fidelity_with_estimators(const Povm& p, int copies,
                                               const std::vector<Ket>& estimators) {
  const int d = p.dim();
  std::int64_t tuples = 1;
  for (int i = 0; i < copies; ++i) tuples *= p.size();
  std::vector<int> index(copies, 0);
  double sum = 0.0;
  for (std::int64_t t = 0; t < tuples; ++t) {
    std::int64_t rem = t;
    for (int i = copies - 1; i >= 0; --i) {
      index[i] = static_cast<int>(rem % p.size());
      rem /= p.size();
    }
    ComplexMatrix q;
    if (copies == 1)
      q = q_map(p.element(index[0]));
    else if (copies == 2)
      q = q_map(p.element(index[0]), p.element(index[1]));
    else if (copies == 3)
      q = q_map(p.element(index[0]), p.element(index[1]), p.element(index[2]));
    else {
      std::vector<ComplexMatrix> ops;
      for (int i = 0; i < copies; ++i) ops.push_back(p.element(index[i]));
      q = q_map_oracle(ops);
    }
    sum += std::real(expectation(q, estimators[t]));
  }
  return sum / detail::fidelity_denominator(d, copies);
}

// ---------------------------------------------------------------------------
// Bound reports, incompatibility detection, classification
// ---------------------------------------------------------------------------

/// Cross-potential ceiling for a two-factor product measurement:
/// [2 d (d+1) + 2 Phi_{1/2}(A,B)] / [d (d+1) (d+2)]; tight iff both rank 1.
inline double cross_potential_fidelity_bound(const Povm& p, const Povm& q) {
  const double d = p.dim();
  return (2.0 * d * (d + 1.0) + 2.0 * povm_cross_frame_potential(p, q, 0.5)) /
         (d * (d + 1.0) * (d + 2.0));
}

struct FidelityBoundReport {
  int d = 0;
  FidelityConstants constants;
  double f_ab = 0.0, f_aa = 0.0, f_bb = 0.0;

  double cross_potential_bound = 0.0;  // from Phi_1/2(A,B)
  double self_potential_bound_a = 0.0;
  double self_potential_bound_b = 0.0;

  bool cross_potential_ok = false, cross_potential_saturated = false;
  bool sep_bound_ok = false, sep_bound_saturated = false;     // f_ab vs f2_sep
  bool iid_bound_ok_a = false, iid_saturated_a = false;       // f_aa vs f2_iid
  bool iid_bound_ok_b = false, iid_saturated_b = false;
  bool compatible_bound_exceeded = false;                     // f_ab > f2_iid
  bool commuting = false;
  bool commuting_bound_ok = false;                            // if commuting, f_ab <= f1
  bool lower_bound_ok = false, lower_bound_saturated = false; // f_ab vs f1
};

inline FidelityBoundReport fidelity_bound_report(const Povm& p, const Povm& q) {
  if (p.dim() != q.dim()) throw DimMismatchError("fidelity_bound_report: dimension mismatch");
  FidelityBoundReport r;
  r.d = p.dim();
  r.constants = fidelity_constants(r.d);
  r.f_ab = estimation_fidelity({p, q}).value;
  r.f_aa = estimation_fidelity({p, p}).value;
  r.f_bb = estimation_fidelity({q, q}).value;
  r.cross_potential_bound = cross_potential_fidelity_bound(p, q);
  r.self_potential_bound_a = cross_potential_fidelity_bound(p, p);
  r.self_potential_bound_b = cross_potential_fidelity_bound(q, q);

  const double tol = kTol.saturation;
  r.cross_potential_ok = r.f_ab <= r.cross_potential_bound + tol;
  r.cross_potential_saturated = std::abs(r.f_ab - r.cross_potential_bound) <= tol;
  r.sep_bound_ok = r.f_ab <= r.constants.f2_sep + tol;
  r.sep_bound_saturated = std::abs(r.f_ab - r.constants.f2_sep) <= tol;
  r.iid_bound_ok_a = r.f_aa <= r.constants.f2_iid + tol;
  r.iid_saturated_a = std::abs(r.f_aa - r.constants.f2_iid) <= tol;
  r.iid_bound_ok_b = r.f_bb <= r.constants.f2_iid + tol;
  r.iid_saturated_b = std::abs(r.f_bb - r.constants.f2_iid) <= tol;
  r.compatible_bound_exceeded = r.f_ab > r.constants.f2_iid + kTol.witness_margin;
  r.commuting = commute(p, q);
  r.commuting_bound_ok = !r.commuting || r.f_ab <= r.constants.f1 + tol;
  r.lower_bound_ok = r.f_ab >= r.constants.f1 - tol || !(is_rank1(p) || is_rank1(q));
  r.lower_bound_saturated = std::abs(r.f_ab - r.constants.f1) <= tol;
  return r;
}

/// The detector is one-directional: exceeding a ceiling certifies the
/// property is absent, staying below proves nothing.
enum class Verdict { kIncompatible, kNoncommuting, kInconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kIncompatible: return "INCOMPATIBLE";
    case Verdict::kNoncommuting: return "NONCOMMUTING";
    default: return "INCONCLUSIVE";
  }
}

struct WitnessResult {
  Verdict verdict = Verdict::kInconclusive;
  double fidelity = 0.0;
  double incompatible_threshold = 0.0;  // f2_iid
  double noncommuting_threshold = 0.0;  // f1
};

inline WitnessResult incompatibility_witness(const Povm& p, const Povm& q) {
  if (p.dim() != q.dim()) throw DimMismatchError("incompatibility_witness: dimension mismatch");
  const FidelityConstants c = fidelity_constants(p.dim());
  WitnessResult w;
  w.fidelity = estimation_fidelity({p, q}).value;
  w.incompatible_threshold = c.f2_iid;
  w.noncommuting_threshold = c.f1;
  if (w.fidelity > c.f2_iid + kTol.witness_margin)
    w.verdict = Verdict::kIncompatible;
  else if (w.fidelity > c.f1 + kTol.witness_margin)
    w.verdict = Verdict::kNoncommuting;
  else
    w.verdict = Verdict::kInconclusive;
  return w;
}

struct FamilySumReport {
  int d = 0;
  int family_size = 0;
  double sum_all = 0.0;      // over all ordered pairs (r, s)
  double sum_offdiag = 0.0;  // over r != s
  double bound_all = 0.0;    // g^2 f2_iid
  double bound_offdiag = 0.0;  // g (g-1) f2_sep
  bool all_ok = false, all_saturated = false;
  bool offdiag_ok = false, offdiag_saturated = false;
};

inline FamilySumReport family_sum_criteria(const std::vector<Povm>& family) {
  if (family.empty()) throw DomainError("family_sum_criteria: empty family");
  const int d = family.front().dim();
  for (const Povm& p : family)
    if (p.dim() != d) throw DimMismatchError("family_sum_criteria: dimension mismatch");
  FamilySumReport r;
  r.d = d;
  r.family_size = static_cast<int>(family.size());
  const double g = r.family_size;
  for (size_t a = 0; a < family.size(); ++a)
    for (size_t b = 0; b < family.size(); ++b) {
      const double f = estimation_fidelity({family[a], family[b]}).value;
      r.sum_all += f;
      if (a != b) r.sum_offdiag += f;
    }
  const FidelityConstants c = fidelity_constants(d);
  r.bound_all = g * g * c.f2_iid;
  r.bound_offdiag = g * (g - 1.0) * c.f2_sep;
  const double tol = kTol.saturation * g * g;
  r.all_ok = r.sum_all <= r.bound_all + tol;
  r.all_saturated = std::abs(r.sum_all - r.bound_all) <= tol;
  r.offdiag_ok = r.sum_offdiag <= r.bound_offdiag + tol;
  r.offdiag_saturated = std::abs(r.sum_offdiag - r.bound_offdiag) <= tol;
  return r;
}

/// Signature classification from extremal one- and two-copy fidelities.
inline std::string classify_by_fidelity_signature(const Povm& p) {
  const FidelityConstants c = fidelity_constants(p.dim());
  const double tol = kTol.saturation;
  const double f1 = estimation_fidelity({p}).value;
  const double f2 = estimation_fidelity({p, p}).value;
  if (std::abs(f2 - c.f2_iid) <= tol) return "SIC";
  if (std::abs(f1 - c.f1) <= tol && std::abs(f2 - c.f1) <= tol) return "rank-1 projective";
  if (std::abs(f1 - c.f1) <= tol) return "rank-1";
  return "UNCLASSIFIED";
}

inline std::string classify_by_fidelity_signature(const Povm& p, const Povm& q) {
  if (p.dim() != q.dim()) throw DimMismatchError("classify: dimension mismatch");
  const FidelityConstants c = fidelity_constants(p.dim());
  const double tol = kTol.saturation;
  const double fa = estimation_fidelity({p}).value;
  const double fb = estimation_fidelity({q}).value;
  const double faa = estimation_fidelity({p, p}).value;
  const double fbb = estimation_fidelity({q, q}).value;
  const double fab = estimation_fidelity({p, q}).value;
  if (std::abs(faa - c.f2_iid) <= tol && std::abs(fab - c.f2_iid) <= tol) return "identical SICs";
  if (std::abs(fa - c.f1) <= tol && std::abs(fb - c.f1) <= tol && std::abs(fab - c.f1) <= tol)
    return "identical rank-1 projective";
  if (std::abs(faa - c.f1) <= tol && std::abs(fbb - c.f1) <= tol &&
      std::abs(fab - c.f2_sep) <= tol)
    return "MU rank-1 projective";
  return "UNCLASSIFIED";
}

}  // namespace qmeas
