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


#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "qness/batch.hpp"
#include "qness/correlations.hpp"

namespace {

using namespace qness;

struct Pairs {
  std::vector<DensityMatrix> a;
  std::vector<DensityMatrix> b;
};

Pairs make_pairs(int dim, int count) {
  Pairs p;
  for (int k = 0; k < count; ++k) {
    const int rank = 1 + k % dim;
    p.a.push_back(random_density({dim, rank, 2u * static_cast<std::uint64_t>(k)}));
    p.b.push_back(random_density({dim, rank, 2u * static_cast<std::uint64_t>(k) + 1}));
  }
  return p;
}

void BM_QuantumnessBatch(benchmark::State& state) {
  const auto p = make_pairs(static_cast<int>(state.range(0)), 4096);
  for (auto _ : state) benchmark::DoNotOptimize(quantumness_batch(p.a, p.b));
  state.SetItemsProcessed(state.iterations() * 4096);
}

void BM_QuantumnessBatchReference(benchmark::State& state) {
  const auto p = make_pairs(static_cast<int>(state.range(0)), 4096);
  for (auto _ : state) benchmark::DoNotOptimize(quantumness_batch_reference(p.a, p.b));
  state.SetItemsProcessed(state.iterations() * 4096);
}

std::vector<std::vector<double>> witness_grid(int n) {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pts.push_back({0.1 * i, 0.1 * j, 0.05 * i, 0.05 * j});
  return pts;
}

void BM_EvaluatePoints(benchmark::State& state) {
  const auto rho = separable_example_state();
  const auto pts = witness_grid(static_cast<int>(state.range(0)));
  const PointObjective f = [&](std::span<const double> x) { return witness_objective(rho, x); };
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_points(f, pts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}

void BM_EvaluatePointsReference(benchmark::State& state) {
  const auto rho = separable_example_state();
  const auto pts = witness_grid(static_cast<int>(state.range(0)));
  const PointObjective f = [&](std::span<const double> x) { return witness_objective(rho, x); };
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_points_reference(f, pts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}

}  // namespace

BENCHMARK(BM_QuantumnessBatch)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(BM_QuantumnessBatchReference)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(BM_EvaluatePoints)->Arg(16)->Arg(64);
BENCHMARK(BM_EvaluatePointsReference)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
