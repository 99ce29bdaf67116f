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


#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qness/correlations.hpp"
#include "qness/witness.hpp"
#include "support.hpp"

using namespace qness;
using namespace qness::testing;

namespace {

PovmElement projector(const Eigen::VectorXcd& v) { return PovmElement(ComplexOperator::ket_bra(v.normalized())); }

BipartiteState random_cq(int dim_a, int dim_b, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  CqSpec spec;
  double total = 0.0;
  for (int i = 0; i < dim_b; ++i) {
    spec.probs.push_back(uni(gen));
    total += spec.probs.back();
    spec.a_states.push_back(random_state(dim_a, gen()));
  }
  for (double& p : spec.probs) p /= total;
  const auto u = random_unitary(dim_b, gen());
  for (int i = 0; i < dim_b; ++i) spec.b_basis.push_back(u.matrix().col(i));
  return build_cq_state(spec);
}

}  // namespace

TEST_CASE("paper states") {
  const auto epr = epr_state();
  CHECK(epr.dim_a() == 2);
  CHECK(epr.dim_b() == 2);
  CHECK(max_abs(partial_trace(epr.state(), epr.layout(), {1}).matrix() - 0.5 * Matrix::Identity(2, 2)) <= 1e-15);

  const auto sigma = separable_example_state();
  CHECK(std::abs(sigma.state().op().trace() - cplx(1.0)) <= 1e-15);
  CHECK(hermitian_eigenvalues(sigma.state().matrix())(0) >= -1e-15);
  // Both marginals are maximally mixed.
  CHECK(max_abs(partial_trace(sigma.state(), sigma.layout(), {0}).matrix() - 0.5 * Matrix::Identity(2, 2)) <= 1e-15);
  CHECK(max_abs(partial_trace(sigma.state(), sigma.layout(), {1}).matrix() - 0.5 * Matrix::Identity(2, 2)) <= 1e-15);
}

TEST_CASE("conditional_state") {
  const auto epr = epr_state();
  const auto [pi1, pi2] = projector_pair({0.0, 0.0});
  const auto c = conditional_state(epr, pi1);
  REQUIRE(c.state.has_value());
  CHECK(c.probability == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(max_abs(c.state->matrix() - basis_state(2, 0).matrix()) <= 1e-15);

  const auto ra = random_state(3, 5), rb = random_state(2, 6);
  const BipartiteState prod(tensor_product(ra, rb), 3, 2);
  std::mt19937_64 gen(1);
  for (int k = 0; k < 20; ++k) {
    const auto cs = conditional_state(prod, projector(random_unit_vector(3, gen)));
    REQUIRE(cs.state.has_value());
    CHECK(max_abs(cs.state->matrix() - rb.matrix()) <= 1e-12);
  }

  // Complete POVM: probabilities sum to one.
  const auto rho = BipartiteState(random_state(6, 77), 3, 2);
  const auto u = random_unitary(3, 9);
  std::vector<PovmElement> povm;
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    povm.push_back(projector(u.matrix().col(i)));
    total += conditional_state(rho, povm.back()).probability;
  }
  CHECK(is_complete_povm(povm));
  CHECK(std::abs(total - 1.0) <= 1e-10);
  povm.pop_back();
  CHECK_FALSE(is_complete_povm(povm));

  // |1><1| on A never fires for |00><00|.
  const BipartiteState zero(tensor_product(basis_state(2, 0), basis_state(2, 0)), 2, 2);
  const auto none = conditional_state(zero, projector(ket(2, 1)));
  CHECK_FALSE(none.state.has_value());
  CHECK(none.probability <= 1e-12);

  CHECK_THROWS_AS(conditional_state(zero, projector(ket(3, 1))), DimensionError);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = -1.0;
  CHECK_THROWS_AS(PovmElement(ComplexOperator(neg)), Error);
  CHECK_THROWS_AS(BipartiteState(random_state(4, 1), 3, 2), DimensionError);
}

TEST_CASE("projector_pair") {
  const auto [a, b] = projector_pair({0.0, 0.3});
  CHECK(max_abs(a.op().matrix() - basis_state(2, 0).matrix()) <= 1e-16);
  for (double theta : {0.0, 0.4, 1.3}) {
    const auto [p1, p2] = projector_pair({theta, 0.0});
    CHECK(max_abs(p1.op().matrix() - p2.op().matrix()) <= 1e-16);
  }
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> ang(-10.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    const double theta = ang(gen);
    CHECK(std::abs(psi1(theta).dot(psi1_perp(theta))) <= 1e-15);
    CHECK(std::abs(psi2(theta, ang(gen)).norm() - 1.0) <= 1e-15);
  }
}

TEST_CASE("projector_vectors reduce to the real family and stay normalized") {
  for (double theta : {0.0, 0.2, 1.1})
    for (double phi : {0.0, 0.7, 2.0}) {
      const std::vector<double> p{theta, phi, 0.0, 0.0};
      const auto [v1, v2] = projector_vectors(p, 2);
      CHECK(max_abs(v1 - psi1(theta)) <= 1e-16);
      CHECK(max_abs(v2 - psi2(theta, phi)) <= 1e-15);
    }
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> ang(0.0, 6.0);
  for (int d = 2; d <= 4; ++d) {
    CHECK(projector_parameter_count(d) == 4 * d - 4);
    for (int k = 0; k < 20; ++k) {
      std::vector<double> p(static_cast<std::size_t>(projector_parameter_count(d)));
      for (double& x : p) x = ang(gen);
      const auto [v1, v2] = projector_vectors(p, d);
      CHECK(std::abs(v1.norm() - 1.0) <= 1e-14);
      CHECK(std::abs(v2.norm() - 1.0) <= 1e-14);
    }
  }
  CHECK_THROWS_AS(projector_vectors(std::vector<double>{1.0}, 2), DimensionError);
}

TEST_CASE("correlation_witness") {
  const auto epr = epr_state();
  const auto sigma = separable_example_state();
  for (double theta : {0.0, 0.3, 0.9, 1.4})
    for (double phi : {0.1, 0.5, std::numbers::pi / 4, 1.2}) {
      const auto [e1, e2] = projector_pair({theta, phi});
      const double s = std::sin(2 * phi);
      CHECK(std::abs(correlation_witness(epr, e1, e2) - s * s) <= 1e-10);
      CHECK(std::abs(correlation_witness(sigma, e1, e2) - s * s / 16) <= 1e-10);
      CHECK(correlation_witness(epr, e1, e2) == correlation_witness(epr, e2, e1));
      CHECK(correlation_witness(sigma, e1, e1) <= 1e-12);
    }

  const BipartiteState prod(tensor_product(random_state(2, 1), random_state(3, 2)), 2, 3);
  const auto [e1, e2] = projector_pair({0.2, 0.9});
  CHECK(correlation_witness(prod, e1, e2) <= 1e-12);

  const BipartiteState zero(tensor_product(basis_state(2, 0), basis_state(2, 0)), 2, 2);
  try {
    correlation_witness(zero, projector(ket(2, 0)), projector(ket(2, 1)));
    FAIL("expected ZeroProbabilityError");
  } catch (const ZeroProbabilityError& e) {
    CHECK(e.element() == 2);
  }
  try {
    correlation_witness(zero, projector(ket(2, 1)), projector(ket(2, 0)));
    FAIL("expected ZeroProbabilityError");
  } catch (const ZeroProbabilityError& e) {
    CHECK(e.element() == 1);
  }
  const std::vector<double> p{0.0, std::numbers::pi / 2, 0.0, 0.0};
  CHECK(witness_objective(zero, p) == 0.0);
}

TEST_CASE("CQ states: conditional states commute and are diagonal in the B basis") {
  std::mt19937_64 gen(12);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const int dim_b = 2 + static_cast<int>(s % 2);
    std::mt19937_64 basis_gen(s);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    CqSpec spec;
    double total = 0.0;
    for (int i = 0; i < dim_b; ++i) {
      spec.probs.push_back(uni(basis_gen));
      total += spec.probs.back();
      spec.a_states.push_back(random_state(2, basis_gen()));
    }
    for (double& p : spec.probs) p /= total;
    const auto u = random_unitary(dim_b, basis_gen());
    for (int i = 0; i < dim_b; ++i) spec.b_basis.push_back(u.matrix().col(i));
    const auto cq = build_cq_state(spec);

    for (int k = 0; k < 50; ++k) {
      const auto e1 = projector(random_unit_vector(2, gen));
      const auto e2 = projector(random_unit_vector(2, gen));
      CHECK(correlation_witness(cq, e1, e2) <= 1e-10);
      const auto c = conditional_state(cq, e1);
      REQUIRE(c.state.has_value());
      const Matrix in_basis = u.matrix().adjoint() * c.state->matrix() * u.matrix();
      const Matrix off = in_basis - Matrix(in_basis.diagonal().asDiagonal());
      CHECK(max_abs(off) <= 1e-10);
    }
  }

  CqSpec single;
  single.probs = {1.0};
  single.a_states = {random_state(2, 3)};
  single.b_basis = {ket(2, 0), ket(2, 1)};
  const auto one = build_cq_state(single);
  CHECK(max_abs(one.state().matrix() - tensor_product(single.a_states[0], basis_state(2, 0)).matrix()) <= 1e-15);

  CqSpec bad = single;
  bad.probs = {0.9};
  CHECK_THROWS_AS(build_cq_state(bad), Error);
  bad = single;
  bad.b_basis = {ket(2, 0), ket(2, 0)};
  CHECK_THROWS_AS(build_cq_state(bad), Error);
}

TEST_CASE("maximize_witness") {
  SUBCASE("EPR reaches 1") {
    const auto r = maximize_witness(epr_state());
    CHECK(r.best_q >= 0.999);
    CHECK(r.best_q <= 1.0 + 1e-12);
    CHECK(r.verdict == Verdict::quantum_correlated);
    CHECK(r.trace.size() == 6);
    CHECK(r.evaluations > 12 * 12 * 12 * 12);
  }
  SUBCASE("separable example reaches 1/16") {
    const auto r = maximize_witness(separable_example_state());
    CHECK(r.best_q >= 0.9 / 16);
    CHECK(r.best_q <= 1.0 / 16 + 1e-6);
    CHECK(r.verdict == Verdict::quantum_correlated);
    // The reported optimum is reproduced by its own projectors.
    const double again = correlation_witness(separable_example_state(), projector(r.best_vector_1),
                                             projector(r.best_vector_2));
    CHECK(std::abs(again - r.best_q) <= 1e-12);
  }
  SUBCASE("best_q is the max of the recorded search points") {
    const auto r = maximize_witness(BipartiteState(random_state(4, 31), 2, 2));
    double mx = 0.0;
    for (const auto& pt : r.trace) mx = std::max(mx, pt.q);
    CHECK(r.best_q == mx);
    CHECK(r.best_q >= r.grid_best_q);
  }
  SUBCASE("product states show no violation") {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const BipartiteState prod(tensor_product(random_state(2, s), random_state(2, s + 10)), 2, 2);
      const auto r = maximize_witness(prod);
      CHECK(r.best_q <= 1e-8);
      CHECK(r.verdict == Verdict::no_violation_found);
    }
  }
  SUBCASE("qutrit A uses the generic parametrization") {
    OptimizerConfig cfg;
    cfg.grid = 6;
    cfg.max_grid_points = 4000;
    cfg.seed = 3;
    const auto cq = random_cq(3, 2, 91);
    CHECK(maximize_witness(cq, cfg).verdict == Verdict::no_violation_found);

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(9);
    for (int k = 0; k < 3; ++k) psi(k * 3 + k) = 1.0 / std::sqrt(3.0);
    const BipartiteState max_ent(pure(psi), 3, 3);
    const auto r = maximize_witness(max_ent, cfg);
    // Conditional states of a maximally entangled state are conjugate kets, so Q reaches 1.
    CHECK(r.best_q >= 0.99);
    CHECK(r.best_params.size() == 8);

    const auto r2 = maximize_witness(max_ent, cfg);
    CHECK(r2.best_q == r.best_q);
    CHECK(r2.best_params == r.best_params);
  }
}
