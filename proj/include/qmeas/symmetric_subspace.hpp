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
#include <cstdint>
#include <numeric>
#include <vector>

#include "qmeas/complex_matrix.hpp"
#include "qmeas/errors.hpp"
#include "qmeas/tolerances.hpp"

namespace qmeas {

/// Number of ways to place t indistinguishable excitations in d modes;
/// the dimension of the t-fold symmetric subspace.
inline double symmetric_dimension(int d, int t) {
  double v = 1.0;
  for (int k = 1; k <= t; ++k) v = v * (d + k - 1) / k;
  return v;
}

inline std::int64_t integer_pow(int base, int exp) {
  std::int64_t v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

/// Projector onto the symmetric subspace of (C^d)^{\otimes t}, carried
/// together with its construction parameters.
struct SymmetricProjector {
  int single_dim = 0;
  int copies = 0;
  ComplexMatrix matrix;
};

/// Builds the symmetric projector as the average of all t! permutation
/// operators on (C^d)^{\otimes t}. Guarded by kTol.max_tensor_dim.
inline SymmetricProjector symmetric_projector(int d, int t) {
  const std::int64_t dim = integer_pow(d, t);
  if (dim > kTol.max_tensor_dim)
    throw TooLargeError("symmetric_projector: d^t = " + std::to_string(dim) +
                        " exceeds the resource guard");
  const int n = static_cast<int>(dim);

  SymmetricProjector out;
  out.single_dim = d;
  out.copies = t;
  out.matrix = ComplexMatrix(n);

  std::vector<int> perm(t);
  std::iota(perm.begin(), perm.end(), 0);
  double factorial = 1.0;
  for (int k = 2; k <= t; ++k) factorial *= k;
  const double weight = 1.0 / factorial;

  std::vector<int> digits(t);
  do {
    for (int src = 0; src < n; ++src) {
      int rem = src;
      for (int pos = t - 1; pos >= 0; --pos) {
        digits[pos] = rem % d;
        rem /= d;
      }
      int dst = 0;
      for (int pos = 0; pos < t; ++pos) dst = dst * d + digits[perm[pos]];
      out.matrix.at(dst, src) += weight;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  return out;
}

/// W |jk> = |kj>. Identical to 2 P_2 - 1 on (C^d)^{\otimes 2}.
inline ComplexMatrix swap_operator(int d) {
  ComplexMatrix w(d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) w.at(k * d + j, j * d + k) = 1.0;
  return w;
}

}  // namespace qmeas
