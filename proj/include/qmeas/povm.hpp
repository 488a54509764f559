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
#include "qmeas/tolerances.hpp"

namespace qmeas {

/// Diagnostic record produced when checking a candidate element list
/// against the measurement axioms. Report-style: never throws.
struct PovmValidation {
  bool valid = false;
  double psd_margin = 0.0;             // most negative eigenvalue across elements
  double completeness_residual = 0.0;  // || sum - 1 ||_max
  std::vector<int> zero_elements;      // indices of (dropped) zero operators
  std::string message;
};

inline PovmValidation validate_elements(int dim, const std::vector<ComplexMatrix>& elements) {
  PovmValidation report;
  if (elements.empty()) {
    report.message = "no elements";
    return report;
  }
  ComplexMatrix sum(dim);
  double min_eig = 0.0;
  for (size_t j = 0; j < elements.size(); ++j) {
    const ComplexMatrix& e = elements[j];
    if (e.dim() != dim) {
      report.message = "element " + std::to_string(j) + " has dim " + std::to_string(e.dim()) +
                       ", expected " + std::to_string(dim);
      return report;
    }
    if (!e.is_hermitian(kTol.eigen_input_symmetry)) {
      report.message = "element " + std::to_string(j) + " is not Hermitian";
      return report;
    }
    if (e.max_abs() <= kTol.zero_element) {
      report.zero_elements.push_back(static_cast<int>(j));
      continue;
    }
    min_eig = std::min(min_eig, min_eigenvalue(e));
    sum += e;
  }
  report.psd_margin = min_eig;
  report.completeness_residual = (sum - ComplexMatrix::identity(dim)).max_abs();
  report.valid = report.psd_margin >= -kTol.psd_margin &&
                 report.completeness_residual <= kTol.completeness &&
                 static_cast<int>(elements.size()) > static_cast<int>(report.zero_elements.size());
  if (!report.valid && report.message.empty()) {
    if (report.psd_margin < -kTol.psd_margin)
      report.message = "element not positive semidefinite (margin " + std::to_string(min_eig) + ")";
    else if (report.completeness_residual > kTol.completeness)
      report.message =
          "elements do not sum to the identity (residual " + std::to_string(report.completeness_residual) + ")";
    else
      report.message = "all elements are zero";
  }
  return report;
}

/// An ordered list of positive operators summing to the identity.
/// Zero operators are dropped at construction (with a counter), matching
/// the standing convention that no element is the zero operator.
class Povm {
 public:
  Povm(int dim, std::vector<ComplexMatrix> elements, std::vector<std::string> labels = {})
      : dim_(dim) {
    PovmValidation report = validate_elements(dim, elements);
    if (!report.valid) throw InvalidPovmError("invalid POVM: " + report.message);
    if (labels.empty()) {
      labels.resize(elements.size());
      for (size_t j = 0; j < elements.size(); ++j) labels[j] = std::to_string(j);
    }
    size_t zero_cursor = 0;
    for (size_t j = 0; j < elements.size(); ++j) {
      if (zero_cursor < report.zero_elements.size() &&
          report.zero_elements[zero_cursor] == static_cast<int>(j)) {
        ++zero_cursor;
        ++dropped_zero_elements_;
        continue;
      }
      elements_.push_back(std::move(elements[j]));
      labels_.push_back(std::move(labels[j]));
    }
  }

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const ComplexMatrix& element(int j) const { return elements_[j]; }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int dropped_zero_elements() const { return dropped_zero_elements_; }

 private:
  int dim_;
  std::vector<ComplexMatrix> elements_;
  std::vector<std::string> labels_;
  int dropped_zero_elements_ = 0;
};

inline PovmValidation validate(const Povm& p) { return validate_elements(p.dim(), p.elements()); }

/// Column-stochastic post-processing matrix: entry (j,k) is the
/// probability of relabeling outcome k as outcome j.
class StochasticMatrix {
 public:
  StochasticMatrix(int rows, int cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (static_cast<int>(entries_.size()) != rows * cols)
      throw DimMismatchError("StochasticMatrix: entry count mismatch");
    for (int k = 0; k < cols; ++k) {
      double colsum = 0.0;
      for (int j = 0; j < rows; ++j) {
        if (at(j, k) < 0.0) throw DomainError("StochasticMatrix: negative entry");
        colsum += at(j, k);
      }
      if (std::abs(colsum - 1.0) > kTol.stochastic_column)
        throw DomainError("StochasticMatrix: column " + std::to_string(k) + " sums to " +
                          std::to_string(colsum));
    }
  }

  static StochasticMatrix identity(int n) {
    std::vector<double> e(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) e[static_cast<size_t>(i) * n + i] = 1.0;
    return StochasticMatrix(n, n, std::move(e));
  }

  static StochasticMatrix merge_all(int n) {
    return StochasticMatrix(1, n, std::vector<double>(n, 1.0));
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int j, int k) const { return entries_[static_cast<size_t>(j) * cols_ + k]; }

 private:
  int rows_, cols_;
  std::vector<double> entries_;
};

/// Classical post-processing: A_j = sum_k Lambda_{jk} B_k. Zero outputs
/// are dropped by the Povm constructor; the count is exposed there.
inline Povm coarse_grain(const Povm& p, const StochasticMatrix& lambda) {
  if (lambda.cols() != p.size())
    throw DimMismatchError("coarse_grain: matrix has " + std::to_string(lambda.cols()) +
                           " columns for " + std::to_string(p.size()) + " elements");
  std::vector<ComplexMatrix> out;
  out.reserve(lambda.rows());
  for (int j = 0; j < lambda.rows(); ++j) {
    ComplexMatrix a(p.dim());
    for (int k = 0; k < lambda.cols(); ++k) {
      const double w = lambda.at(j, k);
      if (w == 0.0) continue;
      a += Complex(w) * p.element(k);
    }
    out.push_back(std::move(a));
  }
  return Povm(p.dim(), std::move(out));
}

/// Order monotone: 1/d for the trivial measurement, 1 exactly for rank-1.
inline double purity(const Povm& p) {
  double s = 0.0;
  for (const ComplexMatrix& a : p.elements())
    s += real_overlap(a, a) / std::real(a.trace());
  return s / p.dim();
}

namespace detail {

/// Scale-free proportionality: |tr(A^dag B)|^2 against tr(A^dag A) tr(B^dag B).
inline bool proportional_elements(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double aa = real_overlap(a, a);
  const double bb = real_overlap(b, b);
  const double ab = std::abs(trace_product(a.adjoint(), b));
  return ab * ab >= (1.0 - kTol.proportionality) * aa * bb;
}

}  // namespace detail

/// Canonical representative: merges elements proportional to each other,
/// leaving pairwise linearly independent elements. Purity is preserved.
inline Povm simplify(const Povm& p) {
  std::vector<ComplexMatrix> merged;
  std::vector<std::string> labels;
  for (int j = 0; j < p.size(); ++j) {
    bool absorbed = false;
    for (size_t g = 0; g < merged.size(); ++g) {
      if (detail::proportional_elements(merged[g], p.element(j))) {
        merged[g] += p.element(j);
        labels[g] += "+" + p.labels()[j];
        absorbed = true;
        break;
      }
    }
    if (!absorbed) {
      merged.push_back(p.element(j));
      labels.push_back(p.labels()[j]);
    }
  }
  return Povm(p.dim(), std::move(merged), std::move(labels));
}

/// Same measurement up to relabeling. Greedy nearest-element matching on
/// the simplified forms, verified pairwise afterwards.
inline bool is_equivalent(const Povm& p, const Povm& q) {
  if (p.dim() != q.dim()) return false;
  const Povm sp = simplify(p);
  const Povm sq = simplify(q);
  if (sp.size() != sq.size()) return false;
  std::vector<bool> used(sq.size(), false);
  for (int j = 0; j < sp.size(); ++j) {
    int best = -1;
    double best_dist = 0.0;
    for (int k = 0; k < sq.size(); ++k) {
      if (used[k]) continue;
      const double dist = (sp.element(j) - sq.element(k)).max_abs();
      if (best < 0 || dist < best_dist) {
        best = k;
        best_dist = dist;
      }
    }
    if (best < 0 || best_dist > kTol.element_match) return false;
    used[best] = true;
  }
  return true;
}

inline bool is_rank1(const Povm& p) {
  for (const ComplexMatrix& a : p.elements()) {
    const EigenDecomposition e = hermitian_eigen(a);
    int significant = 0;
    for (double v : e.eigenvalues)
      if (v > kTol.element_match) ++significant;
    if (significant != 1) return false;
  }
  return true;
}

inline bool is_projective(const Povm& p) {
  if (p.size() < 2) return false;  // the trivial measurement carries no flags
  for (int j = 0; j < p.size(); ++j) {
    const ComplexMatrix& a = p.element(j);
    if ((a * a - a).max_abs() > kTol.element_match) return false;
    for (int k = j + 1; k < p.size(); ++k)
      if (std::abs(real_overlap(a, p.element(k))) > kTol.element_match) return false;
  }
  return true;
}

inline bool is_unbiased(const Povm& p) {
  if (p.size() < 2) return false;  // the trivial measurement carries no flags
  const double first = std::real(p.element(0).trace());
  for (const ComplexMatrix& a : p.elements())
    if (std::abs(std::real(a.trace()) - first) > kTol.element_match) return false;
  return true;
}

/// Equal pairwise overlaps for an unbiased rank-1 measurement.
inline bool is_equiangular(const Povm& p) {
  if (!is_rank1(p) || !is_unbiased(p)) return false;
  if (p.size() < 2) return true;
  double first = -1.0;
  for (int j = 0; j < p.size(); ++j)
    for (int k = j + 1; k < p.size(); ++k) {
      const double o = real_overlap(p.element(j), p.element(k));
      if (first < 0.0)
        first = o;
      else if (std::abs(o - first) > kTol.element_match)
        return false;
    }
  return true;
}

inline bool is_trivial(const Povm& p) {
  for (const ComplexMatrix& a : p.elements()) {
    const double scale = std::real(a.trace()) / p.dim();
    if ((a - Complex(scale) * ComplexMatrix::identity(p.dim())).max_abs() > kTol.element_match)
      return false;
  }
  return true;
}

/// tr(A_j B_k) = tr(A_j) tr(B_k) / d for every pair.
inline bool are_mutually_unbiased(const Povm& p, const Povm& q) {
  if (p.dim() != q.dim()) throw DimMismatchError("are_mutually_unbiased: dimension mismatch");
  const double d = p.dim();
  for (const ComplexMatrix& a : p.elements())
    for (const ComplexMatrix& b : q.elements()) {
      const double lhs = real_overlap(a, b);
      const double rhs = std::real(a.trace()) * std::real(b.trace()) / d;
      if (std::abs(lhs - rhs) > kTol.mutually_unbiased) return false;
    }
  return true;
}

inline bool commute(const Povm& p, const Povm& q) {
  if (p.dim() != q.dim()) throw DimMismatchError("commute: dimension mismatch");
  for (const ComplexMatrix& a : p.elements())
    for (const ComplexMatrix& b : q.elements())
      if (commutator(a, b).max_abs() > kTol.commutator) return false;
  return true;
}

/// True when the overlap graph (edge if tr(A_j A_k) > threshold) is
/// disconnected, i.e. the measurement splits as a direct sum.
inline bool is_reducible(const Povm& p) {
  const int m = p.size();
  if (m < 2) return false;
  std::vector<int> component(m, -1);
  std::vector<int> stack{0};
  component[0] = 0;
  while (!stack.empty()) {
    const int j = stack.back();
    stack.pop_back();
    for (int k = 0; k < m; ++k) {
      if (component[k] >= 0) continue;
      if (real_overlap(p.element(j), p.element(k)) > kTol.overlap_edge) {
        component[k] = 0;
        stack.push_back(k);
      }
    }
  }
  for (int k = 0; k < m; ++k)
    if (component[k] < 0) return true;
  return false;
}

/// Pairwise mutual-unbiasedness survey of a family of rank-1 measurements,
/// with the d+1 cardinality bound and the complete-set projectivity check.
struct MuFamilyReport {
  int dim = 0;
  int family_size = 0;
  int max_allowed = 0;  // d + 1
  bool within_bound = false;
  bool all_pairs_mu = false;
  bool complete_set = false;     // all_pairs_mu and family_size == d + 1
  bool all_projective = false;   // evaluated when complete_set
  std::vector<std::vector<bool>> pairwise_mu;
};

inline MuFamilyReport mu_family_check(const std::vector<Povm>& family) {
  MuFamilyReport report;
  if (family.empty()) return report;
  report.dim = family.front().dim();
  report.family_size = static_cast<int>(family.size());
  report.max_allowed = report.dim + 1;
  report.pairwise_mu.assign(family.size(), std::vector<bool>(family.size(), true));
  report.all_pairs_mu = true;
  for (size_t r = 0; r < family.size(); ++r)
    for (size_t s = r + 1; s < family.size(); ++s) {
      const bool mu = are_mutually_unbiased(family[r], family[s]);
      report.pairwise_mu[r][s] = report.pairwise_mu[s][r] = mu;
      report.all_pairs_mu = report.all_pairs_mu && mu;
    }
  report.within_bound = !report.all_pairs_mu || report.family_size <= report.max_allowed;
  report.complete_set = report.all_pairs_mu && report.family_size == report.max_allowed;
  if (report.complete_set) {
    report.all_projective = true;
    for (const Povm& p : family) report.all_projective = report.all_projective && is_projective(p);
  }
  return report;
}

}  // namespace qmeas
