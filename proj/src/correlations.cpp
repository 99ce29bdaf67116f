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


#include "qness/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "qness/batch.hpp"
#include "qness/nelder_mead.hpp"
#include "qness/rng.hpp"
#include "qness/witness.hpp"

namespace qness {

BipartiteState::BipartiteState(DensityMatrix state, int dim_a, int dim_b)
    : state_(std::move(state)), dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a < 1 || dim_b < 1 || dim_a * dim_b != state_.dim()) {
    std::ostringstream os;
    os << "bipartite dims " << dim_a << "x" << dim_b << " do not match state dimension " << state_.dim();
    throw DimensionError(os.str());
  }
}

PovmElement::PovmElement(ComplexOperator op) : op_(std::move(op)) {
  const double herm = hermiticity_defect(op_.matrix());
  if (herm > kStructTol) throw Error("POVM element is not Hermitian within 1e-10");
  if (hermitian_eigenvalues(op_.matrix())(0) < -kStructTol)
    throw Error("POVM element is not positive semidefinite within 1e-10");
}

bool is_complete_povm(const std::vector<PovmElement>& elements) {
  if (elements.empty()) return false;
  const int d = elements.front().dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : elements) {
    if (e.dim() != d) return false;
    sum += e.op().matrix();
  }
  return (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= kStructTol;
}

ZeroProbabilityError::ZeroProbabilityError(int element, double probability)
    : Error([&] {
        std::ostringstream os;
        os << "measurement element " << element << " has probability " << probability
           << " <= 1e-12; conditional state undefined";
        return os.str();
      }()),
      element_(element) {}

ConditionalState conditional_state(const BipartiteState& rho, const PovmElement& e) {
  if (e.dim() != rho.dim_a()) throw DimensionError("conditional_state: element dimension does not match A");
  const ComplexOperator lifted = tensor_product(e.op(), ComplexOperator::identity(rho.dim_b()));
  const ComplexOperator applied = lifted * rho.state().op();
  const ComplexOperator reduced = partial_trace(applied, rho.layout(), {1});

  ConditionalState out;
  out.probability = reduced.trace().real();
  if (out.probability <= kZeroProbability) return out;
  Matrix m = reduced.matrix();
  m = (0.5 / out.probability) * (m + m.adjoint()).eval();
  out.state = validate_density(ComplexOperator(std::move(m)));
  return out;
}

Eigen::VectorXcd psi1(double theta) {
  Eigen::VectorXcd v(2);
  v << std::cos(theta), std::sin(theta);
  return v;
}

Eigen::VectorXcd psi1_perp(double theta) {
  Eigen::VectorXcd v(2);
  v << std::sin(theta), -std::cos(theta);
  return v;
}

Eigen::VectorXcd psi2(double theta, double phi) {
  return std::cos(phi) * psi1(theta) + std::sin(phi) * psi1_perp(theta);
}

std::pair<PovmElement, PovmElement> projector_pair(const MeasurementAngles& angles) {
  return {PovmElement(ComplexOperator::ket_bra(psi1(angles.theta))),
          PovmElement(ComplexOperator::ket_bra(psi2(angles.theta, angles.phi)))};
}

namespace {

ComplexOperator projector_from_kets(const std::vector<std::pair<cplx, Eigen::VectorXcd>>& terms, int dim) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  for (const auto& [amp, ket] : terms) v += amp * ket;
  return ComplexOperator::ket_bra(v);
}

Eigen::VectorXcd basis_ket(int dim, int k) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace

BipartiteState epr_state() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = psi(3) = 1.0 / std::numbers::sqrt2;
  return BipartiteState(validate_density(ComplexOperator::ket_bra(psi)), 2, 2);
}

BipartiteState separable_example_state() {
  const double h = 1.0 / std::numbers::sqrt2;
  const auto zero = ComplexOperator::ket_bra(basis_ket(2, 0));
  const auto one = ComplexOperator::ket_bra(basis_ket(2, 1));
  const auto plus = projector_from_kets({{h, basis_ket(2, 0)}, {h, basis_ket(2, 1)}}, 2);
  const auto minus = projector_from_kets({{h, basis_ket(2, 0)}, {-h, basis_ket(2, 1)}}, 2);
  const Matrix sigma = 0.25 * (tensor_product(zero, plus).matrix() + tensor_product(one, minus).matrix() +
                               tensor_product(plus, one).matrix() + tensor_product(minus, zero).matrix());
  return BipartiteState(validate_density(ComplexOperator(sigma)), 2, 2);
}

BipartiteState build_cq_state(const CqSpec& spec) {
  if (spec.probs.empty()) throw Error("CQ spec: no terms");
  if (spec.probs.size() != spec.a_states.size())
    throw Error("CQ spec: probs and a_states differ in length");
  const int dim_b = static_cast<int>(spec.b_basis.size());
  if (dim_b < 1 || spec.probs.size() > spec.b_basis.size())
    throw Error("CQ spec: more terms than basis vectors");
  double total = 0.0;
  for (double p : spec.probs) {
    if (!(p >= 0.0)) throw Error("CQ spec: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kStructTol) throw Error("CQ spec: probabilities do not sum to 1");
  for (const auto& v : spec.b_basis)
    if (v.size() != dim_b) throw DimensionError("CQ spec: basis vector length differs from basis size");
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j) {
      const cplx overlap = spec.b_basis[static_cast<std::size_t>(i)].dot(spec.b_basis[static_cast<std::size_t>(j)]);
      if (std::abs(overlap - (i == j ? cplx(1.0) : cplx(0.0))) > kStructTol)
        throw Error("CQ spec: B basis is not orthonormal within 1e-10");
    }
  const int dim_a = spec.a_states.front().dim();
  Matrix acc = Matrix::Zero(dim_a * dim_b, dim_a * dim_b);
  for (std::size_t i = 0; i < spec.probs.size(); ++i) {
    if (spec.a_states[i].dim() != dim_a) throw DimensionError("CQ spec: A states differ in dimension");
    acc += spec.probs[i] *
           tensor_product(spec.a_states[i].op(), ComplexOperator::ket_bra(spec.b_basis[i])).matrix();
  }
  acc = 0.5 * (acc + acc.adjoint()).eval();
  return BipartiteState(validate_density(ComplexOperator(std::move(acc))), dim_a, dim_b);
}

double correlation_witness(const BipartiteState& rho, const PovmElement& e1, const PovmElement& e2) {
  const auto c1 = conditional_state(rho, e1);
  if (!c1.state) throw ZeroProbabilityError(1, c1.probability);
  const auto c2 = conditional_state(rho, e2);
  if (!c2.state) throw ZeroProbabilityError(2, c2.probability);
  return quantumness(*c1.state, *c2.state).q_value;
}

int projector_parameter_count(int dim_a) {
  if (dim_a < 2) throw DimensionError("projector search needs dim_a >= 2");
  return 4 * dim_a - 4;
}

namespace {

Eigen::VectorXcd hyperspherical_vector(std::span<const double> angles, std::span<const double> phases) {
  const auto d = static_cast<Eigen::Index>(angles.size() + 1);
  Eigen::VectorXcd v(d);
  double tail = 1.0;
  for (Eigen::Index k = 0; k + 1 < d; ++k) {
    const double a = angles[static_cast<std::size_t>(k)];
    v(k) = tail * std::cos(a);
    tail *= std::sin(a);
  }
  v(d - 1) = tail;
  for (Eigen::Index k = 1; k < d; ++k) v(k) *= std::polar(1.0, phases[static_cast<std::size_t>(k - 1)]);
  return v;
}

}  // namespace

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> projector_vectors(std::span<const double> params, int dim_a) {
  const int count = projector_parameter_count(dim_a);
  if (static_cast<int>(params.size()) != count) throw DimensionError("projector_vectors: wrong parameter count");
  if (dim_a == 2) {
    const double theta = params[0], phi = params[1], beta = params[2], gamma = params[3];
    const cplx eb = std::polar(1.0, beta);
    Eigen::VectorXcd v1(2), perp(2);
    v1 << std::cos(theta), eb * std::sin(theta);
    perp << std::sin(theta), -eb * std::cos(theta);
    Eigen::VectorXcd v2 = std::cos(phi) * v1 + std::polar(1.0, gamma) * std::sin(phi) * perp;
    return {v1, v2};
  }
  const auto half = static_cast<std::size_t>(2 * dim_a - 2);
  const auto m = static_cast<std::size_t>(dim_a - 1);
  const auto first = params.subspan(0, half);
  const auto second = params.subspan(half, half);
  return {hyperspherical_vector(first.subspan(0, m), first.subspan(m, m)),
          hyperspherical_vector(second.subspan(0, m), second.subspan(m, m))};
}

double witness_objective(const BipartiteState& rho, std::span<const double> params) {
  const auto [v1, v2] = projector_vectors(params, rho.dim_a());
  try {
    return correlation_witness(rho, PovmElement(ComplexOperator::ket_bra(v1)),
                               PovmElement(ComplexOperator::ket_bra(v2)));
  } catch (const ZeroProbabilityError&) {
    return 0.0;
  } catch (const InvalidState&) {
    // Near-zero conditioning amplifies rounding past the state checks.
    return 0.0;
  }
}

const char* to_string(Verdict v) {
  return v == Verdict::quantum_correlated ? "quantum_correlated" : "no_violation_found";
}

namespace {

/// Upper end of each parameter axis; the lattice covers [0, span) per axis.
std::vector<double> axis_spans(int dim_a) {
  const double pi = std::numbers::pi;
  if (dim_a == 2) return {pi, pi, 2 * pi, 2 * pi};
  std::vector<double> spans;
  for (int vec = 0; vec < 2; ++vec) {
    for (int k = 0; k < dim_a - 1; ++k) spans.push_back(pi);
    for (int k = 0; k < dim_a - 1; ++k) spans.push_back(2 * pi);
  }
  return spans;
}

std::vector<std::vector<double>> build_lattice(const std::vector<double>& spans, const OptimizerConfig& cfg) {
  const std::size_t ndim = spans.size();
  const int g = std::max(1, cfg.grid);
  double full = 1.0;
  for (std::size_t k = 0; k < ndim; ++k) full *= g;

  auto point_from_digits = [&](const std::vector<int>& digits) {
    std::vector<double> p(ndim);
    for (std::size_t k = 0; k < ndim; ++k) p[k] = spans[k] * digits[k] / g;
    return p;
  };

  std::vector<std::vector<double>> points;
  std::vector<int> digits(ndim, 0);
  if (full <= static_cast<double>(cfg.max_grid_points)) {
    const auto total = static_cast<long>(full);
    points.reserve(static_cast<std::size_t>(total));
    for (long idx = 0; idx < total; ++idx) {
      long rem = idx;
      for (std::size_t k = ndim; k-- > 0;) {
        digits[k] = static_cast<int>(rem % g);
        rem /= g;
      }
      points.push_back(point_from_digits(digits));
    }
  } else {
    auto gen = derived_generator(cfg.seed, 0);
    std::uniform_int_distribution<int> pick(0, g - 1);
    points.reserve(static_cast<std::size_t>(cfg.max_grid_points));
    for (long idx = 0; idx < cfg.max_grid_points; ++idx) {
      for (auto& dgt : digits) dgt = pick(gen);
      points.push_back(point_from_digits(digits));
    }
  }
  return points;
}

}  // namespace

DiscordReport maximize_witness(const BipartiteState& rho, const OptimizerConfig& config) {
  if (rho.dim_a() < 2) throw DimensionError("maximize_witness: dim_a must be at least 2");
  const auto spans = axis_spans(rho.dim_a());
  const auto objective = [&rho](std::span<const double> p) { return witness_objective(rho, p); };

  const auto lattice = build_lattice(spans, config);
  const auto values = evaluate_points(objective, lattice);

  DiscordReport report;
  report.evaluations = static_cast<long>(lattice.size());

  std::vector<std::size_t> order(lattice.size());
  std::iota(order.begin(), order.end(), 0);
  const auto n_starts = static_cast<std::size_t>(std::clamp<long>(config.starts, 0, static_cast<long>(order.size())));
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(std::max<std::size_t>(n_starts, 1)), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return values[a] > values[b] || (values[a] == values[b] && a < b);
                    });

  const std::size_t grid_best = order.front();
  report.grid_best_q = values[grid_best];
  report.best_q = values[grid_best];
  report.best_params = lattice[grid_best];
  report.trace.push_back({lattice[grid_best], values[grid_best], -1});

  std::vector<NelderMeadResult> refined(n_starts);
  NelderMeadOptions nm;
  nm.ftol = config.ftol;
  nm.max_evals = config.max_evals;
  nm.initial_step = 0.5 * spans.front() / std::max(1, config.grid);
  const auto minus_objective = [&objective](std::span<const double> p) { return -objective(p); };
  const auto starts = static_cast<long>(n_starts);
#pragma omp parallel for schedule(dynamic, 1)
  for (long s = 0; s < starts; ++s)
    refined[static_cast<std::size_t>(s)] = nelder_mead_minimize(minus_objective, lattice[order[static_cast<std::size_t>(s)]], nm);

  for (std::size_t s = 0; s < n_starts; ++s) {
    const auto& r = refined[s];
    const double q = -r.value;
    report.evaluations += r.evaluations;
    report.trace.push_back({r.x, q, static_cast<int>(s)});
    if (q > report.best_q) {
      report.best_q = q;
      report.best_params = r.x;
    }
  }

  const auto [v1, v2] = projector_vectors(report.best_params, rho.dim_a());
  report.best_vector_1 = v1;
  report.best_vector_2 = v2;
  report.verdict = report.best_q > config.threshold ? Verdict::quantum_correlated : Verdict::no_violation_found;
  return report;
}

}  // namespace qness
