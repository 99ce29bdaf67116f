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

#include "qness/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace qness {

namespace {

void require_same_dim(const ComplexOperator& a, const ComplexOperator& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch " << a.dim() << " vs " << b.dim();
    throw DimensionError(os.str());
  }
}

Matrix ginibre(int rows, int cols, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(r, c) = cplx(re, im);
    }
  return g;
}

}  // namespace

ComplexOperator::ComplexOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    std::ostringstream os;
    os << "operator must be square and non-empty, got " << m_.rows() << "x" << m_.cols();
    throw DimensionError(os.str());
  }
  for (Eigen::Index i = 0; i < m_.size(); ++i) {
    const cplx z = m_.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error("operator has a non-finite entry");
  }
}

ComplexOperator ComplexOperator::identity(int dim) {
  return ComplexOperator(Matrix::Identity(dim, dim));
}

ComplexOperator ComplexOperator::zero(int dim) { return ComplexOperator(Matrix::Zero(dim, dim)); }

ComplexOperator ComplexOperator::ket_bra(const Eigen::VectorXcd& v) {
  return ComplexOperator(v * v.adjoint());
}

ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b) {
  require_same_dim(a, b, "product");
  return ComplexOperator(a.m_ * b.m_);
}

ComplexOperator operator+(const ComplexOperator& a, const ComplexOperator& b) {
  require_same_dim(a, b, "sum");
  return ComplexOperator(a.m_ + b.m_);
}

ComplexOperator operator-(const ComplexOperator& a, const ComplexOperator& b) {
  require_same_dim(a, b, "difference");
  return ComplexOperator(a.m_ - b.m_);
}

ComplexOperator operator*(cplx s, const ComplexOperator& a) { return ComplexOperator(s * a.m_); }

double hermiticity_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

const char* to_string(DensityCheck c) {
  switch (c) {
    case DensityCheck::hermitian: return "hermitian";
    case DensityCheck::positive: return "positive";
    case DensityCheck::trace: return "trace";
  }
  return "unknown";
}

namespace {

std::string describe(const DensityViolation& v) {
  std::ostringstream os;
  os.precision(17);
  switch (v.check) {
    case DensityCheck::hermitian:
      os << "hermitian check failed: max |M - M^dagger| = " << v.magnitude;
      break;
    case DensityCheck::positive:
      os << "positive check failed: negative eigenvalue " << v.magnitude;
      break;
    case DensityCheck::trace:
      os << "trace check failed: |Tr(M) - 1| = " << v.magnitude;
      break;
  }
  return os.str();
}

}  // namespace

InvalidState::InvalidState(DensityViolation v) : Error(describe(v)), violation_(v) {}

double DensityMatrix::purity() const {
  return (matrix() * matrix()).trace().real();
}

RegisterLayout::RegisterLayout(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DimensionError("register layout needs at least one factor");
  for (int d : dims_) {
    if (d < 1) throw DimensionError("register factor dimension must be positive");
    total_ *= d;
  }
}

std::optional<DensityViolation> check_density(const ComplexOperator& m) {
  const double herm = hermiticity_defect(m.matrix());
  if (herm > kStructTol) return DensityViolation{DensityCheck::hermitian, herm};
  const double lowest = hermitian_eigenvalues(m.matrix())(0);
  if (lowest < -kStructTol) return DensityViolation{DensityCheck::positive, lowest};
  const double tr = std::abs(m.trace() - cplx(1.0, 0.0));
  if (tr > kStructTol) return DensityViolation{DensityCheck::trace, tr};
  return std::nullopt;
}

DensityMatrix validate_density(const ComplexOperator& m) {
  if (auto v = check_density(m)) throw InvalidState(*v);
  return DensityMatrix(m);
}

ComplexOperator tensor_product(const ComplexOperator& a, const ComplexOperator& b) {
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  const Eigen::Index n = y.rows();
  Matrix out(x.rows() * n, x.cols() * n);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) out.block(i * n, j * n, n, n) = x(i, j) * y;
  return ComplexOperator(std::move(out));
}

ComplexOperator tensor_product(const std::vector<ComplexOperator>& factors) {
  if (factors.empty()) throw DimensionError("tensor product of an empty list");
  ComplexOperator acc = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) acc = tensor_product(acc, factors[k]);
  return acc;
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return validate_density(tensor_product(a.op(), b.op()));
}

ComplexOperator partial_trace(const ComplexOperator& m, const RegisterLayout& layout,
                              const std::vector<int>& keep) {
  if (layout.total_dim() != m.dim()) {
    std::ostringstream os;
    os << "layout total dimension " << layout.total_dim() << " does not match operator dimension "
       << m.dim();
    throw DimensionError(os.str());
  }
  const int n = layout.size();
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw DimensionError("partial trace: factor index out of range");
    if (kept[static_cast<std::size_t>(k)])
      throw DimensionError("partial trace: factor index listed twice");
    kept[static_cast<std::size_t>(k)] = true;
  }

  // Row-major strides: factor 0 is the most significant digit.
  std::vector<int> stride(static_cast<std::size_t>(n), 1);
  for (int f = n - 2; f >= 0; --f)
    stride[static_cast<std::size_t>(f)] = stride[static_cast<std::size_t>(f + 1)] * layout.dim(f + 1);

  int kept_dim = 1;
  int traced_dim = 1;
  for (int f = 0; f < n; ++f) (kept[static_cast<std::size_t>(f)] ? kept_dim : traced_dim) *= layout.dim(f);

  // Split a full index into (kept, traced) sub-indices.
  auto full_index = [&](int kept_idx, int traced_idx) {
    int idx = 0;
    for (int f = n - 1; f >= 0; --f) {
      const int d = layout.dim(f);
      int digit;
      if (kept[static_cast<std::size_t>(f)]) {
        digit = kept_idx % d;
        kept_idx /= d;
      } else {
        digit = traced_idx % d;
        traced_idx /= d;
      }
      idx += digit * stride[static_cast<std::size_t>(f)];
    }
    return idx;
  };

  std::vector<int> index_table(static_cast<std::size_t>(kept_dim) * traced_dim);
  for (int k = 0; k < kept_dim; ++k)
    for (int t = 0; t < traced_dim; ++t)
      index_table[static_cast<std::size_t>(k) * traced_dim + t] = full_index(k, t);

  const Matrix& full = m.matrix();
  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  for (int r = 0; r < kept_dim; ++r)
    for (int c = 0; c < kept_dim; ++c) {
      cplx acc = 0.0;
      for (int t = 0; t < traced_dim; ++t)
        acc += full(index_table[static_cast<std::size_t>(r) * traced_dim + t],
                    index_table[static_cast<std::size_t>(c) * traced_dim + t]);
      out(r, c) = acc;
    }
  return ComplexOperator(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const RegisterLayout& layout,
                            const std::vector<int>& keep) {
  return validate_density(partial_trace(rho.op(), layout, keep));
}

CommutatorResult commutator_hs(const ComplexOperator& a, const ComplexOperator& b) {
  require_same_dim(a, b, "commutator");
  Matrix c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  const double norm_sq = c.squaredNorm();
  return {ComplexOperator(std::move(c)), norm_sq};
}

DensityMatrix random_density(const RandomSpec& spec) {
  if (spec.dim < 1) throw DimensionError("random state dimension must be positive");
  if (spec.rank < 1 || spec.rank > spec.dim) {
    std::ostringstream os;
    os << "rank " << spec.rank << " out of range [1, " << spec.dim << "]";
    throw Error(os.str());
  }
  std::mt19937_64 gen(spec.seed);
  const Matrix g = ginibre(spec.dim, spec.rank, gen);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // GG^dagger is Hermitian up to rounding; make it exact.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return validate_density(ComplexOperator(std::move(rho)));
}

ComplexOperator random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw DimensionError("unitary dimension must be positive");
  std::mt19937_64 gen(seed);
  const Matrix z = ginibre(dim, dim, gen);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase freedom of QR so the distribution is Haar.
  for (int j = 0; j < dim; ++j) {
    const cplx d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return ComplexOperator(std::move(q));
}

bool is_unitary(const ComplexOperator& u, double tol) {
  const Matrix prod = u.matrix().adjoint() * u.matrix();
  return (prod - Matrix::Identity(u.dim(), u.dim())).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix conjugate_by_unitary(const DensityMatrix& rho, const ComplexOperator& u) {
  if (u.dim() != rho.dim()) throw DimensionError("conjugation: unitary dimension mismatch");
  if (!is_unitary(u)) throw Error("conjugation: operator is not unitary within 1e-10");
  Matrix out = u.matrix() * rho.matrix() * u.matrix().adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return validate_density(ComplexOperator(std::move(out)));
}

}  // namespace qness
