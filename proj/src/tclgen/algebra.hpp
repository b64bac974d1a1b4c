// Copyright 2026 The tclgen Authors
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

// algebra.hpp — system model and super-operators over vectorized density
// matrices.
//
// Vectorization is column stacking: vec(rho)[i + d*j] = rho(i, j). Under this
// convention the map rho -> A rho B has the matrix kron(B^T, A).

#pragma once

#include "tclgen/common.hpp"

namespace tclgen {

class SystemModel {
 public:
  /// H_S and X must be square, of equal dimension >= 2 and Hermitian within
  /// 1e-12; alpha must be finite and >= 0.
  SystemModel(Matrix hamiltonian, Matrix coupling, double alpha);

  int dim() const { return static_cast<int>(hamiltonian_.rows()); }
  const Matrix& hamiltonian() const { return hamiltonian_; }
  const Matrix& coupling() const { return coupling_; }
  double alpha() const { return alpha_; }

  SystemModel with_alpha(double alpha) const;

  /// X(t) = exp(i H_S t) X exp(-i H_S t). Uses the eigendecomposition of H_S
  /// computed at construction; X(0) returns X itself.
  Matrix heisenberg_X(double t) const;

  /// exp(-i H_S t).
  Matrix propagator(double t) const;

 private:
  Matrix hamiltonian_;
  Matrix coupling_;
  double alpha_;
  Eigen::VectorXd energies_;
  Matrix eigenvectors_;
  Matrix coupling_eigenbasis_;
};

/// A linear map on d x d matrices, stored as a d^2 x d^2 matrix.
class SuperOp {
 public:
  explicit SuperOp(int dim);
  SuperOp(int dim, Matrix matrix);

  static SuperOp identity(int dim);
  static SuperOp zero(int dim) { return SuperOp(dim); }

  int dim() const { return dim_; }
  const Matrix& matrix() const { return matrix_; }
  Matrix& matrix() { return matrix_; }

  Matrix apply(const Matrix& rho) const;

  double norm() const { return matrix_.norm(); }

  SuperOp& operator+=(const SuperOp& other);
  SuperOp& operator-=(const SuperOp& other);
  SuperOp& operator*=(Complex c);

  friend SuperOp operator+(SuperOp a, const SuperOp& b) { return a += b; }
  friend SuperOp operator-(SuperOp a, const SuperOp& b) { return a -= b; }
  friend SuperOp operator*(Complex c, SuperOp a) { return a *= c; }
  /// Composition; the right operand acts first.
  friend SuperOp operator*(const SuperOp& a, const SuperOp& b);

 private:
  int dim_;
  Matrix matrix_;
};

Vector vectorize(const Matrix& rho);
Matrix unvectorize(const Vector& v, int dim);

/// kron(a, b) for dense complex matrices.
Matrix kron(const Matrix& a, const Matrix& b);

/// rho -> A rho B.
SuperOp sandwich_super(const Matrix& left, const Matrix& right);
/// rho -> [A, rho].
SuperOp commutator_super(const Matrix& a);
/// rho -> {A, rho}.
SuperOp anticommutator_super(const Matrix& a);

Matrix superop_apply(const SuperOp& s, const Matrix& rho);
/// Applies s2 first, then s1.
SuperOp superop_compose(const SuperOp& s1, const SuperOp& s2);
/// c * s1 + s2.
SuperOp superop_axpy(Complex c, const SuperOp& s1, const SuperOp& s2);

/// Frobenius norm of A - A^dagger.
double hermiticity_deviation(const Matrix& a);

}  // namespace tclgen
