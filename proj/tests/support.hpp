// Copyright 2026 The qness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Test-only fixtures and independent oracles.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qness/qcore.hpp"

namespace qness::testing {

inline Eigen::VectorXcd ket(int dim, int k) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(k) = 1.0;
  return v;
}

inline Eigen::VectorXcd plus_ket() {
  Eigen::VectorXcd v(2);
  v << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  return v;
}

inline DensityMatrix pure(const Eigen::VectorXcd& v) {
  return validate_density(ComplexOperator::ket_bra(v.normalized()));
}

inline DensityMatrix basis_state(int dim, int k) { return pure(ket(dim, k)); }
inline DensityMatrix plus_state() { return pure(plus_ket()); }

inline Matrix pauli_x() { Matrix m(2, 2); m << 0, 1, 1, 0; return m; }
inline Matrix pauli_y() { Matrix m(2, 2); m << 0, cplx(0, -1), cplx(0, 1), 0; return m; }
inline Matrix pauli_z() { Matrix m(2, 2); m << 1, 0, 0, -1; return m; }

/// (I + r . sigma) / 2 for |r| <= 1.
inline DensityMatrix bloch_state(double x, double y, double z) {
  Matrix m = 0.5 * (Matrix::Identity(2, 2) + x * pauli_x() + y * pauli_y() + z * pauli_z());
  return validate_density(ComplexOperator(m));
}

inline Eigen::Vector3d bloch_vector(const DensityMatrix& rho) {
  const Matrix& m = rho.matrix();
  return {(m * pauli_x()).trace().real(), (m * pauli_y()).trace().real(), (m * pauli_z()).trace().real()};
}

inline Eigen::VectorXcd random_unit_vector(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (int k = 0; k < dim; ++k) {
    const double re = n(gen);
    const double im = n(gen);
    v(k) = cplx(re, im);
  }
  return v.normalized();
}

inline DensityMatrix random_state(int dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const int rank = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(dim));
  return random_density({dim, rank, seed ^ 0x5bd1e995ULL});
}

/// Tr_B by explicit sandwiching with (I x <k|) ... (I x |k>), B the last factor.
inline Matrix oracle_trace_last(const Matrix& rho, int dim_a, int dim_b) {
  Matrix out = Matrix::Zero(dim_a, dim_a);
  for (int k = 0; k < dim_b; ++k) {
    Matrix sandwich = Matrix::Zero(dim_a * dim_b, dim_a);
    for (int a = 0; a < dim_a; ++a) sandwich(a * dim_b + k, a) = 1.0;
    out += sandwich.adjoint() * rho * sandwich;
  }
  return out;
}

/// Tr_A, A the first factor.
inline Matrix oracle_trace_first(const Matrix& rho, int dim_a, int dim_b) {
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int k = 0; k < dim_a; ++k) {
    Matrix sandwich = Matrix::Zero(dim_a * dim_b, dim_b);
    for (int b = 0; b < dim_b; ++b) sandwich(k * dim_b + b, b) = 1.0;
    out += sandwich.adjoint() * rho * sandwich;
  }
  return out;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace qness::testing
