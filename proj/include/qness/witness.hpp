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

#pragma once

#include <cstddef>
#include <vector>

#include "qness/qcore.hpp"

namespace qness {

enum class QuantumnessMethod { direct_norm, trace_formula, interferometric };

const char* to_string(QuantumnessMethod m);

/// Mutual incompatibility of two states.
///
/// q_value is 2 ||[rho_a, rho_b]||^2 = 4 (v1_term - v2_term) with
/// v1_term = Tr(rho_a^2 rho_b^2) and v2_term = Tr((rho_a rho_b)^2). The
/// commutator of two Hermitian operators is anti-Hermitian, so v2_term never
/// exceeds v1_term and q_value is nonnegative. It vanishes exactly when the
/// states commute.
struct WitnessResult {
  double q_value = 0.0;
  double v1_term = 0.0;
  double v2_term = 0.0;
  QuantumnessMethod method = QuantumnessMethod::direct_norm;
};

WitnessResult quantumness(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                          QuantumnessMethod method = QuantumnessMethod::direct_norm);

/// Tr(rho_a [A, rho_b]) and Tr(rho_b [A, rho_a]) for the Hermitian observable
/// A = i [rho_a, rho_b]. Both are purely imaginary with modulus Q/2; the first
/// is +iQ/2 and the second -iQ/2 with the sign convention of quantumness().
struct WitnessValues {
  cplx value_a;
  cplx value_b;
};

WitnessValues witness_observables(const DensityMatrix& rho_a, const DensityMatrix& rho_b);

/// A pair of Hermitian observables probing Tr(rho [A, B]).
class ProbePair {
 public:
  ProbePair(ComplexOperator a, ComplexOperator b);
  const ComplexOperator& a() const { return a_; }
  const ComplexOperator& b() const { return b_; }

 private:
  ComplexOperator a_;
  ComplexOperator b_;
};

struct ProbeResult {
  double max_violation = 0.0;
  std::size_t argmax = 0;
};

/// max_k |Tr(rho [A_k, B_k])|. A zero result only means these probes saw no
/// quantumness; it does not prove the state classical.
ProbeResult classicality_probe(const DensityMatrix& rho, const std::vector<ProbePair>& probes);

/// The d^2 - 1 generalized Gell-Mann matrices (symmetric, antisymmetric, diagonal).
std::vector<ComplexOperator> gell_mann_basis(int dim);

/// All unordered pairs of Gell-Mann observables; supported for dim <= 4.
std::vector<ProbePair> default_probes(int dim);

}  // namespace qness
