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

#include "qness/witness.hpp"

#include <cmath>
#include <sstream>

namespace qness {

const char* to_string(QuantumnessMethod m) {
  switch (m) {
    case QuantumnessMethod::direct_norm: return "direct_norm";
    case QuantumnessMethod::trace_formula: return "trace_formula";
    case QuantumnessMethod::interferometric: return "interferometric";
  }
  return "unknown";
}

WitnessResult quantumness(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                          QuantumnessMethod method) {
  if (rho_a.dim() != rho_b.dim()) {
    std::ostringstream os;
    os << "quantumness: dimension mismatch " << rho_a.dim() << " vs " << rho_b.dim();
    throw DimensionError(os.str());
  }
  const Matrix& a = rho_a.matrix();
  const Matrix& b = rho_b.matrix();
  const Matrix ab = a * b;
  const Matrix ba = b * a;

  WitnessResult r;
  r.method = method;
  // Tr(a^2 b^2) = Tr((ab)(ba)) and Tr((ab)^2) = Tr((ab)(ab)); both are real.
  r.v1_term = (ab.cwiseProduct(ba.transpose())).sum().real();
  r.v2_term = (ab.cwiseProduct(ab.transpose())).sum().real();

  switch (method) {
    case QuantumnessMethod::direct_norm:
      r.q_value = 2.0 * (ab - ba).squaredNorm();
      break;
    case QuantumnessMethod::trace_formula:
      r.q_value = 4.0 * (r.v1_term - r.v2_term);
      break;
    case QuantumnessMethod::interferometric:
      throw Error("quantumness: use interferometric_quantumness for the interferometer route");
  }
  return r;
}

WitnessValues witness_observables(const DensityMatrix& rho_a, const DensityMatrix& rho_b) {
  if (rho_a.dim() != rho_b.dim()) throw DimensionError("witness_observables: dimension mismatch");
  const Matrix& a = rho_a.matrix();
  const Matrix& b = rho_b.matrix();
  const Matrix obs = cplx(0.0, 1.0) * (a * b - b * a);
  const Matrix comm_b = obs * b - b * obs;
  const Matrix comm_a = obs * a - a * obs;
  return {(a * comm_b).trace(), (b * comm_a).trace()};
}

ProbePair::ProbePair(ComplexOperator a, ComplexOperator b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.dim() != b_.dim()) throw DimensionError("probe pair: dimension mismatch");
  if (hermiticity_defect(a_.matrix()) > kStructTol || hermiticity_defect(b_.matrix()) > kStructTol)
    throw Error("probe pair: observables must be Hermitian within 1e-10");
}

ProbeResult classicality_probe(const DensityMatrix& rho, const std::vector<ProbePair>& probes) {
  if (probes.empty()) throw Error("classicality_probe: empty probe list");
  ProbeResult best;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const Matrix& a = probes[k].a().matrix();
    const Matrix& b = probes[k].b().matrix();
    if (a.rows() != rho.dim()) throw DimensionError("classicality_probe: probe dimension mismatch");
    const double v = std::abs((rho.matrix() * (a * b - b * a)).trace());
    if (k == 0 || v > best.max_violation) best = {v, k};
  }
  return best;
}

std::vector<ComplexOperator> gell_mann_basis(int dim) {
  if (dim < 2) throw DimensionError("Gell-Mann basis needs dim >= 2");
  std::vector<ComplexOperator> out;
  for (int j = 0; j < dim; ++j)
    for (int k = j + 1; k < dim; ++k) {
      Matrix sym = Matrix::Zero(dim, dim);
      sym(j, k) = sym(k, j) = 1.0;
      out.emplace_back(std::move(sym));
      Matrix anti = Matrix::Zero(dim, dim);
      anti(j, k) = cplx(0.0, -1.0);
      anti(k, j) = cplx(0.0, 1.0);
      out.emplace_back(std::move(anti));
    }
  for (int l = 1; l < dim; ++l) {
    Matrix diag = Matrix::Zero(dim, dim);
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) diag(j, j) = scale;
    diag(l, l) = -l * scale;
    out.emplace_back(std::move(diag));
  }
  return out;
}

std::vector<ProbePair> default_probes(int dim) {
  if (dim > 4) throw DimensionError("default probe set is limited to dim <= 4");
  const auto basis = gell_mann_basis(dim);
  std::vector<ProbePair> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) out.emplace_back(basis[i], basis[j]);
  return out;
}

}  // namespace qness
