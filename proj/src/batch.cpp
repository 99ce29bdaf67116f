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


#include "qness/batch.hpp"

#include <exception>

#include "qness/witness.hpp"

namespace qness {

namespace {

void require_equal_length(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionError("batch: operand lists differ in length");
}

}  // namespace

std::vector<double> quantumness_batch(std::span<const DensityMatrix> a,
                                      std::span<const DensityMatrix> b) {
  require_equal_length(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].dim() != b[k].dim()) throw DimensionError("batch: dimension mismatch in pair");
  std::vector<double> out(a.size());
  const auto n = static_cast<long>(a.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long k = 0; k < n; ++k) {
    const Matrix& x = a[static_cast<std::size_t>(k)].matrix();
    const Matrix& y = b[static_cast<std::size_t>(k)].matrix();
    const Matrix xy = x * y;
    // [x,y] = xy - (xy)^dagger for Hermitian x, y.
    out[static_cast<std::size_t>(k)] = 2.0 * (xy - xy.adjoint()).squaredNorm();
  }
  return out;
}

std::vector<double> quantumness_batch_reference(std::span<const DensityMatrix> a,
                                                std::span<const DensityMatrix> b) {
  require_equal_length(a.size(), b.size());
  std::vector<double> out;
  out.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(2.0 * commutator_hs(a[k].op(), b[k].op()).hs_norm_sq);
  return out;
}

std::vector<double> evaluate_points(const PointObjective& f,
                                    const std::vector<std::vector<double>>& points) {
  std::vector<double> out(points.size());
  const auto n = static_cast<long>(points.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 32)
  for (long k = 0; k < n; ++k) {
    const auto& p = points[static_cast<std::size_t>(k)];
    try {
      out[static_cast<std::size_t>(k)] = f(std::span<const double>(p));
    } catch (...) {
#pragma omp critical(qness_evaluate_points)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<double> evaluate_points_reference(const PointObjective& f,
                                              const std::vector<std::vector<double>>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(f(std::span<const double>(p)));
  return out;
}

}  // namespace qness
