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

#include <random>

#include "qmeas/complex_matrix.hpp"
#include "qmeas/hermitian_eigen.hpp"

namespace qmeas {

/// Seedable source of random states and operators. Gaussian amplitudes
/// followed by Gram-Schmidt give rotation-invariant draws, which is all
/// the property tests need.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }

  Complex gaussian() {
    std::normal_distribution<double> n(0.0, 1.0);
    return Complex(n(gen_), n(gen_));
  }

  Ket ket(int d) {
    Ket v(d);
    for (Complex& z : v) z = gaussian();
    return normalized(v);
  }

  /// Haar-distributed unitary via Gram-Schmidt on Gaussian columns.
  ComplexMatrix unitary(int d) {
    ComplexMatrix u(d);
    std::vector<Ket> cols;
    cols.reserve(d);
    for (int c = 0; c < d; ++c) {
      Ket v(d);
      for (Complex& z : v) z = gaussian();
      for (const Ket& prev : cols) {
        const Complex overlap = inner(prev, v);
        for (int r = 0; r < d; ++r) v[r] -= overlap * prev[r];
      }
      cols.push_back(normalized(v));
    }
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < d; ++r) u.at(r, c) = cols[c][r];
    return u;
  }

  /// Random Hermitian matrix with entries drawn from the unit square.
  ComplexMatrix hermitian(int d) {
    ComplexMatrix m(d);
    for (int r = 0; r < d; ++r) {
      m.at(r, r) = uniform(-1.0, 1.0);
      for (int c = r + 1; c < d; ++c) {
        const Complex z(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
        m.at(r, c) = z;
        m.at(c, r) = std::conj(z);
      }
    }
    return m;
  }

  /// Random PSD matrix G = X X^dag with X a d x rank Gaussian block.
  ComplexMatrix psd(int d, int rank) {
    std::vector<Ket> cols(rank);
    for (Ket& c : cols) {
      c.resize(d);
      for (Complex& z : c) z = gaussian();
    }
    ComplexMatrix g(d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        for (int k = 0; k < rank; ++k) g.at(r, c) += cols[k][r] * std::conj(cols[k][c]);
    return g;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qmeas
