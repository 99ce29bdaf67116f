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

#include "qness/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "qness/rng.hpp"

namespace qness {

namespace {

constexpr double kProbabilitySlack = 1e-9;

void check_bijection(const std::vector<int>& mapping, int n) {
  if (static_cast<int>(mapping.size()) != n)
    throw DimensionError("permutation size does not match register layout");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int m : mapping) {
    if (m < 0 || m >= n || seen[static_cast<std::size_t>(m)])
      throw Error("permutation mapping is not a bijection");
    seen[static_cast<std::size_t>(m)] = true;
  }
}

}  // namespace

PermutationUnitary::PermutationUnitary(RegisterLayout layout, std::vector<int> mapping)
    : layout_(std::move(layout)), mapping_(std::move(mapping)) {
  check_bijection(mapping_, layout_.size());
  for (int s = 0; s < layout_.size(); ++s)
    if (layout_.dim(s) != layout_.dim(mapping_[static_cast<std::size_t>(s)]))
      throw DimensionError("permutation moves a factor into a slot of different dimension");
}

PermutationUnitary PermutationUnitary::identity(RegisterLayout layout) {
  std::vector<int> m(static_cast<std::size_t>(layout.size()));
  for (std::size_t s = 0; s < m.size(); ++s) m[s] = static_cast<int>(s);
  return PermutationUnitary(std::move(layout), std::move(m));
}

PermutationUnitary PermutationUnitary::operator*(const PermutationUnitary& rhs) const {
  if (layout_.dims() != rhs.layout_.dims()) throw DimensionError("permutation layouts differ");
  // rhs first puts input slot rhs[s] at s; then *this puts that slot's content
  // from position mapping_[s].
  std::vector<int> composed(mapping_.size());
  for (std::size_t s = 0; s < mapping_.size(); ++s)
    composed[s] = rhs.mapping_[static_cast<std::size_t>(mapping_[s])];
  return PermutationUnitary(layout_, std::move(composed));
}

std::vector<std::vector<int>> PermutationUnitary::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> visited(mapping_.size(), false);
  for (std::size_t start = 0; start < mapping_.size(); ++start) {
    if (visited[start]) continue;
    std::vector<int> cycle;
    int s = static_cast<int>(start);
    while (!visited[static_cast<std::size_t>(s)]) {
      visited[static_cast<std::size_t>(s)] = true;
      cycle.push_back(s);
      s = mapping_[static_cast<std::size_t>(s)];
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

ComplexOperator PermutationUnitary::to_matrix() const {
  const int n = layout_.size();
  const int total = layout_.total_dim();
  Matrix out = Matrix::Zero(total, total);
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (int col = 0; col < total; ++col) {
    int rem = col;
    for (int f = n - 1; f >= 0; --f) {
      digits[static_cast<std::size_t>(f)] = rem % layout_.dim(f);
      rem /= layout_.dim(f);
    }
    int row = 0;
    for (int s = 0; s < n; ++s)
      row = row * layout_.dim(s) + digits[static_cast<std::size_t>(mapping_[static_cast<std::size_t>(s)])];
    out(row, col) = 1.0;
  }
  return ComplexOperator(std::move(out));
}

PermutationUnitary generalized_swap(int i, int j, const RegisterLayout& layout) {
  const int n = layout.size();
  if (i < 0 || j < 0 || i >= n || j >= n) throw DimensionError("swap: factor index out of range");
  if (i == j) throw Error("swap: factor indices must differ");
  if (layout.dim(i) != layout.dim(j)) throw DimensionError("swap: local dimensions differ");
  std::vector<int> m(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) m[static_cast<std::size_t>(s)] = s;
  std::swap(m[static_cast<std::size_t>(i)], m[static_cast<std::size_t>(j)]);
  return PermutationUnitary(layout, std::move(m));
}

namespace {

void require_four_equal(const RegisterLayout& layout) {
  if (layout.size() != 4) {
    std::ostringstream os;
    os << "cascade needs exactly 4 factors, got " << layout.size();
    throw DimensionError(os.str());
  }
  for (int f = 1; f < 4; ++f)
    if (layout.dim(f) != layout.dim(0)) throw DimensionError("cascade factors must share one dimension");
}

}  // namespace

PermutationUnitary build_u1(const RegisterLayout& layout) {
  require_four_equal(layout);
  const auto s_ab = generalized_swap(0, 1, layout);
  const auto s_bc = generalized_swap(1, 2, layout);
  const auto s_cd = generalized_swap(2, 3, layout);
  return s_ab * s_bc * s_cd;
}

PermutationUnitary build_u2(const RegisterLayout& layout) {
  require_four_equal(layout);
  const auto s_ab = generalized_swap(0, 1, layout);
  const auto s_bc = generalized_swap(1, 2, layout);
  const auto s_cd = generalized_swap(2, 3, layout);
  return s_bc * s_cd * s_ab * s_bc * s_ab;
}

cplx permutation_expectation(const PermutationUnitary& perm, const std::vector<DensityMatrix>& states) {
  const auto& layout = perm.layout();
  if (static_cast<int>(states.size()) != layout.size())
    throw DimensionError("permutation_expectation: one state per factor required");
  for (int f = 0; f < layout.size(); ++f)
    if (states[static_cast<std::size_t>(f)].dim() != layout.dim(f))
      throw DimensionError("permutation_expectation: state dimension does not match layout");

  cplx result = 1.0;
  for (const auto& cycle : perm.cycles()) {
    Matrix prod = states[static_cast<std::size_t>(cycle.front())].matrix();
    for (std::size_t k = 1; k < cycle.size(); ++k)
      prod = prod * states[static_cast<std::size_t>(cycle[k])].matrix();
    result *= prod.trace();
  }
  return result;
}

std::vector<double> default_phases(int count) {
  if (count < 1) throw Error("phase grid needs at least one setting");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * k / count;
  return out;
}

double fringe_probability(cplx expectation, double phase) {
  return 0.5 * (1.0 + (std::polar(1.0, phase) * expectation).real());
}

namespace {

int distinct_phase_count(const std::vector<double>& phases) {
  std::vector<double> wrapped;
  wrapped.reserve(phases.size());
  for (double p : phases) {
    double w = std::fmod(p, 2.0 * std::numbers::pi);
    if (w < 0) w += 2.0 * std::numbers::pi;
    wrapped.push_back(w);
  }
  std::sort(wrapped.begin(), wrapped.end());
  int count = 0;
  for (std::size_t k = 0; k < wrapped.size(); ++k)
    if (k == 0 || wrapped[k] - wrapped[k - 1] > 1e-12) ++count;
  if (count > 1 && wrapped.front() + 2.0 * std::numbers::pi - wrapped.back() <= 1e-12) --count;
  return count;
}

}  // namespace

FringeData run_interferometer(const InterferometerSpec& spec) {
  if (spec.phases.empty()) throw Error("interferometer: phase list is empty");
  if (distinct_phase_count(spec.phases) < 3)
    throw Error("interferometer: at least 3 distinct phases are required");
  if (spec.mode == FringeMode::sampled && spec.shots_per_phase < 1)
    throw Error("interferometer: sampled mode needs a positive shot count");

  const cplx t = permutation_expectation(spec.unitary, spec.inputs);
  const auto n = static_cast<long>(spec.phases.size());
  FringeData data;
  data.points.resize(spec.phases.size());

#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) {
    const double phase = spec.phases[static_cast<std::size_t>(k)];
    double p = fringe_probability(t, phase);
    FringePoint& pt = data.points[static_cast<std::size_t>(k)];
    pt.phase = phase;
    if (p < -kProbabilitySlack || p > 1.0 + kProbabilitySlack) {
      // Only reachable if |Tr(U rho)| > 1, which valid inputs exclude.
      pt.p0 = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    p = std::clamp(p, 0.0, 1.0);
    if (spec.mode == FringeMode::exact) {
      pt.p0 = p;
      pt.shots = 0;
    } else {
      auto gen = derived_generator(spec.seed, static_cast<std::uint64_t>(k));
      std::binomial_distribution<long long> draw(spec.shots_per_phase, p);
      const long long hits = draw(gen);
      pt.p0 = static_cast<double>(hits) / spec.shots_per_phase;
      pt.shots = spec.shots_per_phase;
    }
  }
  for (const auto& pt : data.points)
    if (std::isnan(pt.p0)) throw Error("interferometer: fringe probability left [0,1]; inconsistent input");
  return data;
}

VisibilityEstimate extract_visibility(const FringeData& fringes) {
  std::vector<double> phases;
  for (const auto& pt : fringes.points) phases.push_back(pt.phase);
  if (distinct_phase_count(phases) < 3) throw Error("visibility fit: need at least 3 distinct phases");

  const auto n = static_cast<Eigen::Index>(fringes.points.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& pt = fringes.points[static_cast<std::size_t>(k)];
    design(k, 0) = std::cos(pt.phase);
    design(k, 1) = std::sin(pt.phase);
    rhs(k) = pt.p0 - 0.5;
  }
  const Eigen::Matrix2d normal = design.transpose() * design;
  if (std::abs(normal.determinant()) <= 1e-12 * normal.squaredNorm())
    throw Error("visibility fit: degenerate phase grid");
  const Eigen::Matrix2d normal_inv = normal.inverse();
  const Eigen::Vector2d coef = normal_inv * (design.transpose() * rhs);

  // p0 - 1/2 = (Re t / 2) cos(phi) - (Im t / 2) sin(phi)
  VisibilityEstimate est;
  est.expectation = cplx(2.0 * coef(0), -2.0 * coef(1));
  est.v = std::abs(est.expectation);
  est.alpha = est.v > 0.0 ? std::arg(est.expectation) : 0.0;
  if (est.alpha <= -std::numbers::pi) est.alpha += 2.0 * std::numbers::pi;

  bool sampled = false;
  Eigen::VectorXd var = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& pt = fringes.points[static_cast<std::size_t>(k)];
    if (pt.shots <= 0) continue;
    sampled = true;
    const double fit = std::clamp(0.5 + design.row(k).dot(coef), 0.0, 1.0);
    var(k) = fit * (1.0 - fit) / static_cast<double>(pt.shots);
  }
  if (sampled) {
    const Eigen::MatrixXd weighted = design.transpose() * var.asDiagonal() * design;
    const Eigen::Matrix2d cov = 4.0 * normal_inv * weighted * normal_inv;  // of (Re t, -Im t)
    est.stderr_re = std::sqrt(cov(0, 0));
    if (est.v > 0.0) {
      const Eigen::Vector2d grad(est.expectation.real() / est.v, -est.expectation.imag() / est.v);
      est.stderr_v = std::sqrt(std::max(0.0, grad.dot(cov * grad)));
    } else {
      est.stderr_v = std::sqrt(0.5 * cov.trace());
    }
  }
  return est;
}

InterferometricResult interferometric_quantumness(const DensityMatrix& rho_a,
                                                  const DensityMatrix& rho_b, FringeMode mode,
                                                  int shots, std::uint64_t seed,
                                                  const std::vector<double>& phases) {
  if (rho_a.dim() != rho_b.dim()) throw DimensionError("interferometric_quantumness: dimension mismatch");
  const int d = rho_a.dim();
  const RegisterLayout layout({d, d, d, d});
  const std::vector<DensityMatrix> inputs{rho_a, rho_a, rho_b, rho_b};

  InterferometerSpec s1{build_u1(layout), inputs, phases, mode, shots, derive_seed(seed, 1)};
  InterferometerSpec s2{build_u2(layout), inputs, phases, mode, shots, derive_seed(seed, 2)};

  InterferometricResult r;
  r.fringes_u1 = run_interferometer(s1);
  r.fringes_u2 = run_interferometer(s2);
  r.u1 = extract_visibility(r.fringes_u1);
  r.u2 = extract_visibility(r.fringes_u2);

  // Both traces are real; the real part of the fitted expectation is the
  // unbiased visibility estimate.
  r.witness.method = QuantumnessMethod::interferometric;
  r.witness.v1_term = r.u1.expectation.real();
  r.witness.v2_term = r.u2.expectation.real();
  r.witness.q_value = 4.0 * (r.witness.v1_term - r.witness.v2_term);
  r.stderr_q = 4.0 * std::hypot(r.u1.stderr_re, r.u2.stderr_re);
  return r;
}

}  // namespace qness
