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

namespace qness {

struct NelderMeadOptions {
  double initial_step = 0.2;
  /// Stop once max |f_i - f_best| over the simplex falls to this value.
  double ftol = 1e-10;
  int max_evals = 2000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free simplex minimization with the standard reflection (1),
/// expansion (2), contraction (1/2) and shrink (1/2) coefficients.
NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                                      const NelderMeadOptions& opts = {});

}  // namespace qness
