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


// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qness/batch.hpp"
#include "qness/correlations.hpp"
#include "qness/interferometer.hpp"
#include "qness/witness.hpp"
#include "support.hpp"

using namespace qness;
using namespace qness::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(const char* name, double time_limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = time_limit_s <= 0.0 || secs < time_limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s  %-30s %8.3fs  %s%s\n", pass ? "PASS" : "FAIL", name, secs, o.detail.c_str(),
              in_time ? "" : "  (time limit exceeded)");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<double> grid_axis() {
  std::vector<double> axis(20);
  for (int k = 0; k < 20; ++k) axis[static_cast<std::size_t>(k)] = k * (std::numbers::pi / 2) / 19.0;
  return axis;
}

Outcome example_grid(const BipartiteState& rho, double scale) {
  double worst = 0.0;
  double grid_max = 0.0;
  for (double theta : grid_axis())
    for (double phi : grid_axis()) {
      const auto [e1, e2] = projector_pair({theta, phi});
      const double q = correlation_witness(rho, e1, e2);
      worst = std::max(worst, std::abs(q - scale * std::pow(std::sin(2 * phi), 2)));
      grid_max = std::max(grid_max, q);
    }
  double peak_err = 0.0;
  for (double theta : grid_axis()) {
    const auto [e1, e2] = projector_pair({theta, std::numbers::pi / 4});
    peak_err = std::max(peak_err, std::abs(correlation_witness(rho, e1, e2) - scale));
  }
  const bool pass = worst <= 1e-10 && peak_err <= 1e-10 && grid_max <= scale + 1e-10;
  return {pass, fmt("max |Q - closed form| = %.2e, |Q(pi/4) - max| = %.2e, grid max = %.12f", worst,
                    peak_err, grid_max)};
}

CqSpec random_cq(int dim_b, std::mt19937_64& gen) {
  CqSpec s;
  std::uniform_real_distribution<double> u(0.05, 1.0);
  double total = 0.0;
  for (int i = 0; i < dim_b; ++i) total += s.probs.emplace_back(u(gen));
  for (double& p : s.probs) p /= total;
  for (int i = 0; i < dim_b; ++i) s.a_states.push_back(random_state(2, gen()));
  const auto basis = random_unitary(dim_b, gen());
  for (int i = 0; i < dim_b; ++i) s.b_basis.push_back(basis.matrix().col(i));
  return s;
}

}  // namespace

int main() {
  criterion("EPR conditional witness", 1.0, [] { return example_grid(epr_state(), 1.0); });
  criterion("separable conditional witness", 1.0, [] { return example_grid(separable_example_state(), 1.0 / 16); });

  criterion("visibility identity", 30.0, [] {
    double worst = 0.0;
    std::uint64_t seed = 1000;
    for (int d : {2, 3})
      for (int k = 0; k < 1000; ++k) {
        const auto a = random_state(d, seed++);
        const auto b = random_state(d, seed++);
        const double exact = quantumness(a, b).q_value;
        const double vis = interferometric_quantumness(a, b, FringeMode::exact).witness.q_value;
        worst = std::max(worst, std::abs(vis - exact));
      }
    return Outcome{worst <= 1e-9, fmt("2000 pairs, max |Q_vis - Q| = %.2e", worst)};
  });

  criterion("bounds 0 <= Q <= 1", 120.0, [] {
    constexpr int kPairs = 100000;
    std::vector<DensityMatrix> a, b;
    a.reserve(kPairs);
    b.reserve(kPairs);
    for (int k = 0; k < kPairs; ++k) {
      const int d = 2 + k % 4;
      a.push_back(random_state(d, 2u * k + 7));
      b.push_back(random_state(d, 2u * k + 8));
    }
    const auto q = quantumness_batch(a, b);
    long violations = 0;
    double lo = 1.0, hi = 0.0;
    for (int k = 0; k < kPairs; ++k) {
      const double v = q[static_cast<std::size_t>(k)];
      if (!(v >= 0.0 && v <= 1.0)) {
        if (violations++ < 5) std::printf("      finding: pair %d (dim %d) Q = %.17g\n", k, 2 + k % 4, v);
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return Outcome{violations == 0, fmt("%.0f violations, observed range [%.3e, %.6f]",
                                        static_cast<double>(violations), lo, hi)};
  });

  criterion("permutation oracle", 10.0, [] {
    const RegisterLayout layout({2, 2, 2, 2});
    std::vector<DensityMatrix> states;
    for (std::uint64_t s = 0; s < 4; ++s) states.push_back(random_state(2, 500 + s));
    std::vector<ComplexOperator> ops;
    for (const auto& s : states) ops.push_back(s.op());
    const Matrix full = tensor_product(ops).matrix();
    std::vector<int> mapping{0, 1, 2, 3};
    double worst = 0.0;
    int count = 0;
    do {
      const PermutationUnitary p(layout, mapping);
      const cplx dense = (p.to_matrix().matrix() * full).trace();
      worst = std::max(worst, std::abs(permutation_expectation(p, states) - dense));
      ++count;
    } while (std::next_permutation(mapping.begin(), mapping.end()));
    return Outcome{count == 24 && worst <= 1e-12,
                   fmt("%.0f permutations, max deviation %.2e", count, worst)};
  });

  criterion("witness observables", 0.0, [] {
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 1000; ++k) {
      const auto a = random_state(2, 30000 + 2 * k);
      const auto b = random_state(2, 30001 + 2 * k);
      const double q = quantumness(a, b).q_value;
      const auto w = witness_observables(a, b);
      worst = std::max({worst, std::abs(std::abs(w.value_a) - q / 2), std::abs(std::abs(w.value_b) - q / 2)});
    }
    return Outcome{worst <= 1e-10, fmt("1000 qubit pairs, max ||Tr(rho[A,B])| - Q/2| = %.2e", worst)};
  });

  criterion("CQ null test", 0.0, [] {
    std::mt19937_64 gen(77);
    double worst = 0.0;
    for (int s = 0; s < 20; ++s) {
      const int dim_b = s % 2 == 0 ? 2 : 3;
      const auto rho = build_cq_state(random_cq(dim_b, gen));
      for (int m = 0; m < 50; ++m) {
        const PovmElement e1(ComplexOperator::ket_bra(random_unit_vector(2, gen)));
        const PovmElement e2(ComplexOperator::ket_bra(random_unit_vector(2, gen)));
        worst = std::max(worst, correlation_witness(rho, e1, e2));
      }
    }
    return Outcome{worst <= 1e-10, fmt("20 states x 50 pairs, max Q = %.2e", worst)};
  });

  criterion("optimizer detection", 60.0, [] {
    const double epr = maximize_witness(epr_state()).best_q;
    const double sigma = maximize_witness(separable_example_state()).best_q;
    double product_max = 0.0;
    int flagged = 0;
    for (std::uint64_t k = 0; k < 20; ++k) {
      const int dim_b = k % 2 == 0 ? 2 : 3;
      const auto a = random_state(2, 40000 + 2 * k);
      const auto b = random_state(dim_b, 40001 + 2 * k);
      const auto rep = maximize_witness(BipartiteState(tensor_product(a, b), 2, dim_b));
      product_max = std::max(product_max, rep.best_q);
      if (rep.verdict != Verdict::no_violation_found) ++flagged;
    }
    const bool pass = epr >= 0.999 && sigma >= 0.9 / 16 && sigma <= 1.0 / 16 + 1e-6 && product_max <= 1e-8 &&
                      flagged == 0;
    return Outcome{pass, fmt("EPR %.9f, sigma %.9f, product max %.2e", epr, sigma, product_max)};
  });

  criterion("shot statistics", 0.0, [] {
    const auto a = bloch_state(0.0, 0.0, 0.8);
    const auto b = bloch_state(0.6, 0.0, 0.0);
    const double q = quantumness(a, b).q_value;
    int covered = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      const auto r = interferometric_quantumness(a, b, FringeMode::sampled, 100000, 9000 + t);
      if (std::abs(r.witness.q_value - q) <= 5 * r.stderr_q) ++covered;
    }
    std::vector<double> se;
    for (int shots : {1000, 10000, 100000})
      se.push_back(interferometric_quantumness(a, b, FringeMode::sampled, shots, 4242).stderr_q);
    const double r1 = se[0] / se[1] / std::sqrt(10.0);
    const double r2 = se[1] / se[2] / std::sqrt(10.0);
    const bool scaling = r1 >= 0.5 && r1 <= 2.0 && r2 >= 0.5 && r2 <= 2.0;
    return Outcome{covered >= 99 && scaling,
                   fmt("%.0f/100 within 5 sigma, stderr ratio / sqrt(10) = %.3f, %.3f", covered, r1, r2)};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
