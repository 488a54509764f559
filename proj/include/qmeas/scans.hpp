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

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "qmeas/builders.hpp"
#include "qmeas/designs.hpp"
#include "qmeas/fidelity.hpp"
#include "qmeas/qubit.hpp"

namespace qmeas {

/// Worker count for scan grids, from QMEAS_THREADS (default 1). Each grid
/// point writes into its own preallocated slot, so the output order never
/// depends on scheduling.
inline int scan_thread_count() {
  const char* env = std::getenv("QMEAS_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

template <typename Fn>
inline void parallel_for(std::int64_t count, Fn&& fn) {
  const int workers = scan_thread_count();
  if (workers == 1 || count < 2 * workers) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([=, &fn]() {
      for (std::int64_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// Three-basis scan in dimension 4
// ---------------------------------------------------------------------------

struct ScanPoint3 {
  double x = 0.0, y = 0.0, z = 0.0;
  double fidelity = 0.0;
};

/// Three-copy fidelity of the product of the three-basis family at the
/// given parameters.
inline double mub_triple_fidelity(double x, double y, double z) {
  const std::array<Povm, 3> basis = mub_triple_d4({x, y, z});
  return estimation_fidelity({basis[0], basis[1], basis[2]}).value;
}

/// n^3 lexicographic grid over [0, pi)^3, plus the two reference points
/// (pi/2, 0, 0) and (pi/2, pi/2, pi/2) appended when the grid misses them.
inline std::vector<ScanPoint3> scan_mub_triple(int n) {
  if (n < 2) throw DomainError("scan_mub_triple: need at least 2 points per axis");
  const double step = kPi / n;
  std::vector<ScanPoint3> rows(static_cast<size_t>(n) * n * n);
  parallel_for(static_cast<std::int64_t>(rows.size()), [&](std::int64_t t) {
    const int i = static_cast<int>(t / (static_cast<std::int64_t>(n) * n));
    const int j = static_cast<int>((t / n) % n);
    const int k = static_cast<int>(t % n);
    ScanPoint3& row = rows[t];
    row.x = i * step;
    row.y = j * step;
    row.z = k * step;
    row.fidelity = mub_triple_fidelity(row.x, row.y, row.z);
  });
  const bool half_on_grid = n % 2 == 0;  // pi/2 = (n/2) * step
  if (!half_on_grid) {
    rows.push_back({kPi / 2.0, 0.0, 0.0, mub_triple_fidelity(kPi / 2.0, 0.0, 0.0)});
    rows.push_back({kPi / 2.0, kPi / 2.0, kPi / 2.0,
                    mub_triple_fidelity(kPi / 2.0, kPi / 2.0, kPi / 2.0)});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Phase scan over the dimension-3 SIC family
// ---------------------------------------------------------------------------

inline double sic3_three_copy_fidelity(double phi) {
  return estimation_fidelity(sic_d3(phi), 3).value;
}

struct ScanPoint1 {
  double phi = 0.0;
  double fidelity = 0.0;
};

struct SicScanDiagnostics {
  double period = 0.0;                 // 2 pi / 9
  double max_period_deviation = 0.0;   // |F(phi) - F(phi + period)| over samples
  bool increasing_first_half = true;   // on [0, period/2]
  bool decreasing_second_half = true;  // on [period/2, period)
  double argmin_phi = 0.0;
  double argmax_phi = 0.0;
};

/// n samples over one period [0, 2 pi / 9).
inline std::vector<ScanPoint1> scan_sic_phase(int n) {
  if (n < 9) throw DomainError("scan_sic_phase: need at least 9 samples");
  const double period = 2.0 * kPi / 9.0;
  std::vector<ScanPoint1> rows(n);
  parallel_for(n, [&](std::int64_t i) {
    rows[i].phi = period * static_cast<double>(i) / n;
    rows[i].fidelity = sic3_three_copy_fidelity(rows[i].phi);
  });
  return rows;
}

inline SicScanDiagnostics sic_scan_diagnostics(const std::vector<ScanPoint1>& rows) {
  SicScanDiagnostics diag;
  diag.period = 2.0 * kPi / 9.0;
  std::vector<double> shifted(rows.size());
  parallel_for(static_cast<std::int64_t>(rows.size()), [&](std::int64_t i) {
    shifted[i] = sic3_three_copy_fidelity(rows[i].phi + diag.period);
  });
  int argmin = 0, argmax = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    diag.max_period_deviation =
        std::max(diag.max_period_deviation, std::abs(rows[i].fidelity - shifted[i]));
    if (rows[i].fidelity < rows[argmin].fidelity) argmin = static_cast<int>(i);
    if (rows[i].fidelity > rows[argmax].fidelity) argmax = static_cast<int>(i);
  }
  diag.argmin_phi = rows[argmin].phi;
  diag.argmax_phi = rows[argmax].phi;
  const double mid = diag.period / 2.0;
  for (size_t i = 0; i + 1 < rows.size(); ++i) {
    const double delta = rows[i + 1].fidelity - rows[i].fidelity;
    if (rows[i + 1].phi <= mid + 1e-12)
      diag.increasing_first_half = diag.increasing_first_half && delta > 1e-10;
    if (rows[i].phi >= mid - 1e-12)
      diag.decreasing_second_half = diag.decreasing_second_half && delta < -1e-10;
  }
  return diag;
}

// ---------------------------------------------------------------------------
// Closed-form figure datasets
// ---------------------------------------------------------------------------

struct FigureDataset {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Half-potential curves per dimension: basis, SIC, complete MU family,
/// isotropic ensemble.
inline FigureDataset figure_half_potentials(int dmax) {
  FigureDataset data;
  data.columns = {"d", "basis", "sic", "cmub", "haar"};
  for (int d = 2; d <= dmax; ++d) {
    const double dd = d;
    data.rows.push_back({dd, dd, 1.0 + (dd - 1.0) * std::sqrt(dd + 1.0),
                         (dd + std::pow(dd, 2.5)) / (dd + 1.0), haar_frame_potential(d, 0.5)});
  }
  return data;
}

namespace detail {

/// Two-copy fidelity of a rank-1 measurement from its half-potential.
inline double two_copy_from_half_potential(int d, double phi_half) {
  const double dd = d;
  return (2.0 * dd * (dd + 1.0) + 2.0 * phi_half) / (dd * (dd + 1.0) * (dd + 2.0));
}

}  // namespace detail

/// Two-copy fidelities of identical independent pairs per dimension.
inline FigureDataset figure_iid_fidelities(int dmax) {
  FigureDataset data;
  data.columns = {"d", "projective", "sic", "cmub", "isotropic", "f1"};
  for (int d = 2; d <= dmax; ++d) {
    const double dd = d;
    const FidelityConstants c = fidelity_constants(d);
    data.rows.push_back({dd, c.f1, c.f2_iid,
                         detail::two_copy_from_half_potential(d, (dd + std::pow(dd, 2.5)) / (dd + 1.0)),
                         detail::two_copy_from_half_potential(d, haar_frame_potential(d, 0.5)),
                         c.f1});
  }
  return data;
}

/// Two-copy fidelity ceilings per measurement setting.
inline FigureDataset figure_setting_fidelities(int dmax) {
  FigureDataset data;
  data.columns = {"d", "collective", "separable", "iid_sic", "iid_projective"};
  for (int d = 2; d <= dmax; ++d) {
    const FidelityConstants c = fidelity_constants(d);
    data.rows.push_back({double(d), c.n_copy_upper_bound(2), c.f2_sep, c.f2_iid, c.f1});
  }
  return data;
}

/// Qubit pair fidelity against the commutator size of the sharp elements.
inline FigureDataset figure_qubit_commutator(int samples) {
  FigureDataset data;
  data.columns = {"phi", "commutator_norm", "fidelity"};
  for (int i = 0; i < samples; ++i) {
    const double phi = (kPi / 2.0) * i / (samples - 1);
    data.rows.push_back({phi, std::abs(std::sin(phi)), projective_pair_fidelity(phi)});
  }
  return data;
}

/// Fidelity and minimum entropy sum along the qubit basis-pair family.
inline FigureDataset figure_entropy_curve(int samples) {
  FigureDataset data;
  data.columns = {"phi", "fidelity", "h_mes"};
  std::vector<std::vector<double>> rows(samples);
  parallel_for(samples, [&](std::int64_t i) {
    const double phi = (kPi / 2.0) * static_cast<double>(i) / (samples - 1);
    rows[i] = {phi, projective_pair_fidelity(phi), minimum_entropy_sum(phi).h_mes};
  });
  data.rows = std::move(rows);
  return data;
}

}  // namespace qmeas
