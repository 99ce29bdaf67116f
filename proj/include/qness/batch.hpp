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

#include <functional>
#include <span>
#include <vector>

#include "qness/qcore.hpp"

namespace qness {

// Data-parallel kernels. Each OpenMP kernel has a plain serial reference with
// the same contract; tests check they agree and bench_kernels compares them.

/// Q(a[k], b[k]) for every k; spans must have equal length.
std::vector<double> quantumness_batch(std::span<const DensityMatrix> a,
                                      std::span<const DensityMatrix> b);
std::vector<double> quantumness_batch_reference(std::span<const DensityMatrix> a,
                                                std::span<const DensityMatrix> b);

using PointObjective = std::function<double(std::span<const double>)>;

/// f at every point. f must be safe to call concurrently.
std::vector<double> evaluate_points(const PointObjective& f,
                                    const std::vector<std::vector<double>>& points);
std::vector<double> evaluate_points_reference(const PointObjective& f,
                                              const std::vector<std::vector<double>>& points);

}  // namespace qness
