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

#include <cstdint>
#include <vector>

#include "qness/qcore.hpp"
#include "qness/witness.hpp"

namespace qness {

/// Permutation of tensor-factor slots. Slot s of the output receives the ket
/// that sat in slot mapping[s] of the input (0-based).
class PermutationUnitary {
 public:
  PermutationUnitary(RegisterLayout layout, std::vector<int> mapping);
  static PermutationUnitary identity(RegisterLayout layout);

  const RegisterLayout& layout() const { return layout_; }
  const std::vector<int>& mapping() const { return mapping_; }

  /// Operator product (*this) * rhs: rhs acts first.
  PermutationUnitary operator*(const PermutationUnitary& rhs) const;
  bool operator==(const PermutationUnitary& other) const { return mapping_ == other.mapping_; }

  /// Cycles of s -> mapping[s], each starting at its smallest slot.
  std::vector<std::vector<int>> cycles() const;

  /// Dense 0/1 matrix over the full register; factor 0 is most significant.
  ComplexOperator to_matrix() const;

 private:
  RegisterLayout layout_;
  std::vector<int> mapping_;
};

/// Transposition of factors i and j (0-based); their local dimensions must agree.
PermutationUnitary generalized_swap(int i, int j, const RegisterLayout& layout);

/// S_AB S_BC S_CD: the 4-cycle whose expectation on a x a x b x b is Tr(a^2 b^2).
PermutationUnitary build_u1(const RegisterLayout& layout);
/// S_BC S_CD S_AB S_BC S_AB: the 4-cycle whose expectation on a x a x b x b is Tr((ab)^2).
PermutationUnitary build_u2(const RegisterLayout& layout);

/// Tr(P (rho_0 x ... x rho_{n-1})) as a product, over the cycles of P, of the
/// trace of the ordered product of the states along each cycle.
cplx permutation_expectation(const PermutationUnitary& perm, const std::vector<DensityMatrix>& states);

enum class FringeMode { exact, sampled };

struct InterferometerSpec {
  PermutationUnitary unitary;
  std::vector<DensityMatrix> inputs;
  std::vector<double> phases;
  FringeMode mode = FringeMode::exact;
  int shots_per_phase = 0;
  std::uint64_t seed = 0;
};

struct FringePoint {
  double phase = 0.0;
  double p0 = 0.0;
  long long shots = 0;  // 0 marks an exact probability
};

struct FringeData {
  std::vector<FringePoint> points;
};

struct VisibilityEstimate {
  double v = 0.0;
  double alpha = 0.0;
  double stderr_v = 0.0;
  /// Fitted Tr(U rho) = v e^{i alpha} and the standard error of its real part.
  cplx expectation;
  double stderr_re = 0.0;
};

/// k equally spaced phases in [0, 2 pi).
std::vector<double> default_phases(int count = 8);

/// Ancilla fringe for Tr(U rho) = t: p0(phi) = (1 + Re(e^{i phi} t)) / 2.
/// The circuit is H, controlled-U, R_phi = diag(1, e^{i phi}), H, then an
/// ancilla measurement.
double fringe_probability(cplx expectation, double phase);

FringeData run_interferometer(const InterferometerSpec& spec);

/// Ordinary least-squares fit of p0(phi) = (1 + v cos(phi + alpha)) / 2. For sampled
/// fringes the standard errors propagate the binomial variance at the fitted
/// probabilities; exact fringes report zero error.
VisibilityEstimate extract_visibility(const FringeData& fringes);

/// Result of running the U1 and U2 experiments on a x a x b x b.
struct InterferometricResult {
  WitnessResult witness;  // v1_term / v2_term hold the fitted real parts
  VisibilityEstimate u1;
  VisibilityEstimate u2;
  double stderr_q = 0.0;
  FringeData fringes_u1;
  FringeData fringes_u2;
};

/// Q = 4 (v1 - v2) from two interference experiments. shots is ignored in exact mode.
InterferometricResult interferometric_quantumness(const DensityMatrix& rho_a,
                                                  const DensityMatrix& rho_b, FringeMode mode,
                                                  int shots = 0, std::uint64_t seed = 0,
                                                  const std::vector<double>& phases = default_phases());

}  // namespace qness
