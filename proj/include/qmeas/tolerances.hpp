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

namespace qmeas {

/// All numeric tolerances used across the library, in one record.
/// Every threshold quoted by an operation contract lives here so the
/// whole stack can be tightened or loosened from a single place.
struct Tolerances {
  // Matrix-level checks.
  double hermitian_flag = 1e-12;        // Hermiticity of flagged matrices
  double eigen_input_symmetry = 1e-10;  // eigensolver precondition
  double eigen_reconstruction = 1e-9;   // ||M - V diag V^dag|| budget
  double jacobi_off_diagonal = 1e-13;   // relative off-diagonal mass target
  int jacobi_max_sweeps = 60;
  double projector_idempotence = 1e-10;
  double swap_identity = 1e-12;

  // POVM-level checks.
  double psd_margin = 1e-9;        // smallest admissible eigenvalue
  double completeness = 1e-9;      // || sum A_j - 1 ||_max
  double zero_element = 1e-9;      // elements below this norm are dropped
  double proportionality = 1e-10;  // merge threshold in simplify()
  double element_match = 1e-8;     // matching distance in is_equivalent()
  double mutually_unbiased = 1e-9;
  double commutator = 1e-9;
  double overlap_edge = 1e-9;      // reducibility graph edges
  double purity_slack = 1e-10;
  double stochastic_column = 1e-12;

  // Design / state-set checks.
  double ket_normalization = 1e-12;
  double weight_sum = 1e-10;
  double design_residual = 1e-8;

  // Fidelity engine.
  double saturation = 1e-8;          // bound-saturation detection
  double witness_margin = 1e-9;      // strict-exceedance margin for verdicts
  double degenerate_top = 1e-8;      // estimator uniqueness
  double oracle_agreement = 1e-8;    // closed form vs permutation-sum oracle
  double qubit_closed_form = 1e-9;   // analytic qubit formulas vs engine

  // Resource guards.
  int max_tensor_dim = 4096;  // largest d^t a permutation sum may touch

  // Entropic-curve minimization.
  int theta_grid = 10000;
  double theta_refine = 1e-10;
};

inline constexpr Tolerances kTol{};

}  // namespace qmeas
