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

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qness {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Structural tolerance for Hermiticity, positivity, trace and unitarity.
inline constexpr double kStructTol = 1e-10;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or register layouts do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Square complex matrix with finite entries.
class ComplexOperator {
 public:
  ComplexOperator() : m_(Matrix::Zero(1, 1)) {}
  explicit ComplexOperator(Matrix m);

  static ComplexOperator identity(int dim);
  static ComplexOperator zero(int dim);
  /// |v><v| for an arbitrary (not necessarily normalized) vector.
  static ComplexOperator ket_bra(const Eigen::VectorXcd& v);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }
  cplx trace() const { return m_.trace(); }
  ComplexOperator adjoint() const { return ComplexOperator(m_.adjoint()); }

  friend ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b);
  friend ComplexOperator operator+(const ComplexOperator& a, const ComplexOperator& b);
  friend ComplexOperator operator-(const ComplexOperator& a, const ComplexOperator& b);
  friend ComplexOperator operator*(cplx s, const ComplexOperator& a);

 private:
  Matrix m_;
};

/// Max |M - M^dagger| entrywise.
double hermiticity_defect(const Matrix& m);

/// Ascending eigenvalues of the Hermitian part (M + M^dagger)/2.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

/// Which density-matrix invariant failed.
enum class DensityCheck { hermitian, positive, trace };

const char* to_string(DensityCheck c);

struct DensityViolation {
  DensityCheck check;
  double magnitude;  // |M - M^dagger| max, most negative eigenvalue, or |Tr - 1|
};

/// Raised by validate_density; carries the failed check and how far off it was.
class InvalidState : public Error {
 public:
  explicit InvalidState(DensityViolation v);
  const DensityViolation& violation() const { return violation_; }

 private:
  DensityViolation violation_;
};

/// Hermitian, positive semidefinite, unit trace. Only produced through validate_density.
class DensityMatrix {
 public:
  const ComplexOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  int dim() const { return op_.dim(); }
  double purity() const;

 private:
  explicit DensityMatrix(ComplexOperator op) : op_(std::move(op)) {}
  ComplexOperator op_;

  friend DensityMatrix validate_density(const ComplexOperator& m);
};

/// Ordered local dimensions of a tensor-product register.
class RegisterLayout {
 public:
  explicit RegisterLayout(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  int size() const { return static_cast<int>(dims_.size()); }
  int dim(int factor) const { return dims_.at(static_cast<std::size_t>(factor)); }
  int total_dim() const { return total_; }

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

struct RandomSpec {
  int dim = 2;
  int rank = 2;
  std::uint64_t seed = 0;
};

struct CommutatorResult {
  ComplexOperator commutator;
  double hs_norm_sq = 0.0;
};

/// Returns the first failed invariant, or nothing if m is a valid state.
std::optional<DensityViolation> check_density(const ComplexOperator& m);
DensityMatrix validate_density(const ComplexOperator& m);

/// Kronecker product; the left operand is the more significant factor.
ComplexOperator tensor_product(const ComplexOperator& a, const ComplexOperator& b);
ComplexOperator tensor_product(const std::vector<ComplexOperator>& factors);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Partial trace of an arbitrary operator, keeping the listed factors in ascending
/// order. An empty keep set traces everything and yields a 1x1 operator.
ComplexOperator partial_trace(const ComplexOperator& m, const RegisterLayout& layout,
                              const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const RegisterLayout& layout,
                            const std::vector<int>& keep);

/// [A,B] = AB - BA together with its squared Hilbert-Schmidt norm Tr([A,B]^dagger [A,B]).
CommutatorResult commutator_hs(const ComplexOperator& a, const ComplexOperator& b);

/// Ginibre construction G G^dagger / Tr(G G^dagger) with G a dim x rank complex Gaussian.
DensityMatrix random_density(const RandomSpec& spec);
/// Haar unitary from the QR decomposition of a square Ginibre matrix.
ComplexOperator random_unitary(int dim, std::uint64_t seed);

bool is_unitary(const ComplexOperator& u, double tol = kStructTol);
DensityMatrix conjugate_by_unitary(const DensityMatrix& rho, const ComplexOperator& u);

}  // namespace qness
