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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qness/qcore.hpp"

namespace qness {

/// Conditioning probability at or below which the conditional state is undefined.
inline constexpr double kZeroProbability = 1e-12;

/// A density matrix on A x B with A the more significant factor.
class BipartiteState {
 public:
  BipartiteState(DensityMatrix state, int dim_a, int dim_b);

  const DensityMatrix& state() const { return state_; }
  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  RegisterLayout layout() const { return RegisterLayout({dim_a_, dim_b_}); }

 private:
  DensityMatrix state_;
  int dim_a_;
  int dim_b_;
};

/// Hermitian positive semidefinite operator on subsystem A.
class PovmElement {
 public:
  explicit PovmElement(ComplexOperator op);
  const ComplexOperator& op() const { return op_; }
  int dim() const { return op_.dim(); }

 private:
  ComplexOperator op_;
};

/// Elements sum to the identity within 1e-10.
bool is_complete_povm(const std::vector<PovmElement>& elements);

struct MeasurementAngles {
  double theta = 0.0;
  double phi = 0.0;
};

struct ConditionalState {
  std::optional<DensityMatrix> state;  // empty when probability <= 1e-12
  double probability = 0.0;
};

/// Orthonormal basis |b_i> of B, weights p_i and A-states rho_i of sum_i p_i rho_i x |b_i><b_i|.
struct CqSpec {
  std::vector<double> probs;
  std::vector<DensityMatrix> a_states;
  std::vector<Eigen::VectorXcd> b_basis;
};

/// Raised when a measurement element has zero probability on the state.
class ZeroProbabilityError : public Error {
 public:
  ZeroProbabilityError(int element, double probability);
  int element() const { return element_; }

 private:
  int element_;
};

/// Bob's state after Alice's outcome E: Tr_A[(E x I) rho] normalized by its trace.
ConditionalState conditional_state(const BipartiteState& rho, const PovmElement& e);

/// Cos/sin real amplitudes on a qubit.
Eigen::VectorXcd psi1(double theta);
Eigen::VectorXcd psi1_perp(double theta);
Eigen::VectorXcd psi2(double theta, double phi);

/// Rank-1 projectors onto psi1(theta) and psi2(theta, phi).
std::pair<PovmElement, PovmElement> projector_pair(const MeasurementAngles& angles);

/// (|00> + |11>)/sqrt 2.
BipartiteState epr_state();
/// 1/4 [|0><0| x |+><+| + |1><1| x |-><-| + |+><+| x |1><1| + |-><-| x |0><0|].
BipartiteState separable_example_state();

BipartiteState build_cq_state(const CqSpec& spec);

/// Q of the two conditional states of B. Throws ZeroProbabilityError (element 1 or 2)
/// if either outcome cannot occur.
double correlation_witness(const BipartiteState& rho, const PovmElement& e1, const PovmElement& e2);

/// Number of real parameters describing a pair of rank-1 projectors on A.
int projector_parameter_count(int dim_a);

/// Unit vectors of the projector pair described by params.
///
/// For a qubit the parameters are (theta, phi, beta, gamma):
///   psi1 = (cos theta, e^{i beta} sin theta)
///   psi2 = cos phi psi1 + e^{i gamma} sin phi psi1_perp
/// which reduces to the real family psi1(theta), psi2(theta, phi) at beta = gamma = 0.
/// For dim_a >= 3 each vector takes dim_a - 1 hyperspherical amplitude angles
/// followed by dim_a - 1 relative phases.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> projector_vectors(std::span<const double> params,
                                                                 int dim_a);

/// correlation_witness over the parametrized pair; 0 at zero-probability points.
double witness_objective(const BipartiteState& rho, std::span<const double> params);

struct OptimizerConfig {
  int grid = 12;                  // points per parameter axis
  int starts = 5;                 // simplex refinements from the best grid points
  double ftol = 1e-10;            // simplex convergence on Q
  int max_evals = 2000;           // per refinement
  long max_grid_points = 20736;   // lattice is subsampled beyond this (12^4)
  double threshold = 1e-8;        // detection threshold
  std::uint64_t seed = 0;
};

enum class Verdict { quantum_correlated, no_violation_found };

const char* to_string(Verdict v);

struct SearchPoint {
  std::vector<double> params;
  double q = 0.0;
  int start = -1;  // -1 for the grid optimum
};

struct DiscordReport {
  double best_q = 0.0;
  std::vector<double> best_params;
  Eigen::VectorXcd best_vector_1;
  Eigen::VectorXcd best_vector_2;
  long evaluations = 0;
  double grid_best_q = 0.0;
  std::vector<SearchPoint> trace;
  Verdict verdict = Verdict::no_violation_found;
};

/// Grid scan over the projector parameters followed by multi-start simplex
/// refinement. Deterministic for a given config.
DiscordReport maximize_witness(const BipartiteState& rho, const OptimizerConfig& config = {});

}  // namespace qness
