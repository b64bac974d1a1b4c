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

#include "tclgen/algebra.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace tclgen {

namespace {

void require_hermitian(const Matrix& m, const char* name) {
  if (!m.allFinite()) throw ArgumentError(std::string(name) + " has non-finite entries");
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > 1e-12 * scale)
    throw ArgumentError(std::string(name) + " is not Hermitian");
}

}  // namespace

SystemModel::SystemModel(Matrix hamiltonian, Matrix coupling, double alpha)
    : hamiltonian_(std::move(hamiltonian)), coupling_(std::move(coupling)), alpha_(alpha) {
  if (hamiltonian_.rows() != hamiltonian_.cols() || coupling_.rows() != coupling_.cols())
    throw ArgumentError("H_S and X must be square");
  if (hamiltonian_.rows() != coupling_.rows())
    throw ArgumentError("H_S and X must have the same dimension");
  if (hamiltonian_.rows() < 2) throw ArgumentError("system dimension must be >= 2");
  if (!std::isfinite(alpha_) || alpha_ < 0.0) throw ArgumentError("alpha must be finite and >= 0");
  require_hermitian(hamiltonian_, "H_S");
  require_hermitian(coupling_, "X");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian_);
  if (solver.info() != Eigen::Success) throw NumericError("eigendecomposition of H_S failed");
  energies_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  coupling_eigenbasis_ = eigenvectors_.adjoint() * coupling_ * eigenvectors_;
}

SystemModel SystemModel::with_alpha(double alpha) const {
  SystemModel copy = *this;
  if (!std::isfinite(alpha) || alpha < 0.0) throw ArgumentError("alpha must be finite and >= 0");
  copy.alpha_ = alpha;
  return copy;
}

Matrix SystemModel::heisenberg_X(double t) const {
  if (t == 0.0) return coupling_;
  const int d = dim();
  Matrix rotated(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      rotated(j, k) = coupling_eigenbasis_(j, k) *
                      std::exp(Complex(0.0, (energies_(j) - energies_(k)) * t));
  return eigenvectors_ * rotated * eigenvectors_.adjoint();
}

Matrix SystemModel::propagator(double t) const {
  const int d = dim();
  Vector phases(d);
  for (int j = 0; j < d; ++j) phases(j) = std::exp(Complex(0.0, -energies_(j) * t));
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

SuperOp::SuperOp(int dim) : dim_(dim), matrix_(Matrix::Zero(dim * dim, dim * dim)) {
  if (dim < 1) throw ArgumentError("SuperOp dimension must be positive");
}

SuperOp::SuperOp(int dim, Matrix matrix) : dim_(dim), matrix_(std::move(matrix)) {
  if (matrix_.rows() != dim * dim || matrix_.cols() != dim * dim)
    throw ArgumentError("SuperOp matrix must be d^2 x d^2");
}

SuperOp SuperOp::identity(int dim) {
  return SuperOp(dim, Matrix::Identity(dim * dim, dim * dim));
}

Matrix SuperOp::apply(const Matrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) throw ArgumentError("SuperOp::apply: dimension mismatch");
  return unvectorize(matrix_ * vectorize(rho), dim_);
}

SuperOp& SuperOp::operator+=(const SuperOp& other) {
  if (other.dim_ != dim_) throw ArgumentError("SuperOp: dimension mismatch");
  matrix_ += other.matrix_;
  return *this;
}

SuperOp& SuperOp::operator-=(const SuperOp& other) {
  if (other.dim_ != dim_) throw ArgumentError("SuperOp: dimension mismatch");
  matrix_ -= other.matrix_;
  return *this;
}

SuperOp& SuperOp::operator*=(Complex c) {
  matrix_ *= c;
  return *this;
}

SuperOp operator*(const SuperOp& a, const SuperOp& b) {
  if (a.dim_ != b.dim_) throw ArgumentError("SuperOp: dimension mismatch");
  return SuperOp(a.dim_, a.matrix_ * b.matrix_);
}

Vector vectorize(const Matrix& rho) {
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix unvectorize(const Vector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) throw ArgumentError("unvectorize: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

SuperOp sandwich_super(const Matrix& left, const Matrix& right) {
  if (left.rows() != left.cols() || right.rows() != right.cols() || left.rows() != right.rows())
    throw ArgumentError("sandwich_super: operators must be square and of equal size");
  const int d = static_cast<int>(left.rows());
  return SuperOp(d, kron(right.transpose(), left));
}

SuperOp commutator_super(const Matrix& a) {
  if (a.rows() != a.cols()) throw ArgumentError("commutator_super: operator must be square");
  const int d = static_cast<int>(a.rows());
  const Matrix id = Matrix::Identity(d, d);
  return SuperOp(d, kron(id, a) - kron(a.transpose(), id));
}

SuperOp anticommutator_super(const Matrix& a) {
  if (a.rows() != a.cols()) throw ArgumentError("anticommutator_super: operator must be square");
  const int d = static_cast<int>(a.rows());
  const Matrix id = Matrix::Identity(d, d);
  return SuperOp(d, kron(id, a) + kron(a.transpose(), id));
}

Matrix superop_apply(const SuperOp& s, const Matrix& rho) { return s.apply(rho); }

SuperOp superop_compose(const SuperOp& s1, const SuperOp& s2) { return s1 * s2; }

SuperOp superop_axpy(Complex c, const SuperOp& s1, const SuperOp& s2) {
  if (s1.dim() != s2.dim()) throw ArgumentError("superop_axpy: dimension mismatch");
  return SuperOp(s1.dim(), c * s1.matrix() + s2.matrix());
}

double hermiticity_deviation(const Matrix& a) { return (a - a.adjoint()).norm(); }

}  // namespace tclgen
