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

// Reference computations for the tests. Nothing here calls into the library's
// kernel or generator code: bath quantities come from explicit truncated-Fock
// matrices, and system-side maps from explicit matrix products.

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

struct FockMode {
  double kappa, omega, mass;
};

/// One or more oscillators truncated to n levels each, tensor ordered with the
/// first mode slowest.
class FockBath {
 public:
  FockBath(std::vector<FockMode> modes, double beta, int levels, bool zero_temperature = false)
      : modes_(std::move(modes)), levels_(levels) {
    dim_ = 1;
    for (std::size_t m = 0; m < modes_.size(); ++m) dim_ *= levels;
    energies_ = Eigen::VectorXd::Zero(dim_);
    b_ = Matrix::Zero(dim_, dim_);
    rho_ = Matrix::Zero(dim_, dim_);
    // Enumerate product states explicitly.
    std::vector<int> occ(modes_.size(), 0);
    for (int s = 0; s < dim_; ++s) {
      int rem = s;
      for (int m = static_cast<int>(modes_.size()) - 1; m >= 0; --m) {
        occ[m] = rem % levels;
        rem /= levels;
      }
      double e = 0.0;
      for (std::size_t m = 0; m < modes_.size(); ++m) e += modes_[m].omega * (occ[m] + 0.5);
      energies_(s) = e;
      double weight = 1.0;
      for (std::size_t m = 0; m < modes_.size(); ++m)
        weight *= zero_temperature ? (occ[m] == 0 ? 1.0 : 0.0) : std::exp(-beta * modes_[m].omega * occ[m]);
      rho_(s, s) = weight;
      // x_m connects occ[m] -> occ[m] + 1 with sqrt(n + 1) / sqrt(2 m omega).
      for (std::size_t m = 0; m < modes_.size(); ++m) {
        if (occ[m] + 1 >= levels) continue;
        int stride = 1;
        for (std::size_t k = m + 1; k < modes_.size(); ++k) stride *= levels;
        const int up = s + stride;
        const double amp = modes_[m].kappa * std::sqrt((occ[m] + 1.0) / (2.0 * modes_[m].mass * modes_[m].omega));
        b_(up, s) += amp;
        b_(s, up) += amp;
      }
    }
    rho_ /= rho_.trace();
  }

  int dim() const { return dim_; }
  const Matrix& rho() const { return rho_; }
  const Matrix& B0() const { return b_; }

  /// B(t) = exp(i H_B t) B exp(-i H_B t); H_B is diagonal here.
  Matrix B(double t) const {
    Matrix out(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) out(i, j) = std::exp(Complex(0.0, (energies_(i) - energies_(j)) * t)) * b_(i, j);
    return out;
  }

  /// tr(B(t1) B(t2) rho_B).
  Complex correlation(double t1, double t2) const { return (B(t1) * B(t2) * rho_).trace(); }
  /// i tr([B(tau), B(0)] rho_B).
  double D(double tau) const {
    const Matrix c = B(tau) * B(0.0) - B(0.0) * B(tau);
    return (Complex(0.0, 1.0) * (c * rho_).trace()).real();
  }
  /// tr({B(tau), B(0)} rho_B).
  double D1(double tau) const {
    const Matrix a = B(tau) * B(0.0) + B(0.0) * B(tau);
    return (a * rho_).trace().real();
  }

 private:
  std::vector<FockMode> modes_;
  int levels_;
  int dim_;
  Eigen::VectorXd energies_;
  Matrix b_;
  Matrix rho_;
};

/// X(t) via the matrix exponential.
inline Matrix heisenberg(const Matrix& h, const Matrix& x, double t) {
  const Matrix u = (Complex(0.0, -t) * h).exp();
  return u.adjoint() * x * u;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Partial trace over the second factor of dim_a x dim_b.
inline Matrix trace_b(const Matrix& m, int dim_a, int dim_b) {
  Matrix out(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j) out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
  return out;
}

inline Matrix random_hermitian(int d, std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(n(rng), n(rng));
  return scale * 0.5 * (a + a.adjoint());
}

inline Matrix random_matrix(int d, std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(n(rng), n(rng));
  return a;
}

inline Matrix random_density(int d, std::mt19937& rng) {
  const Matrix a = random_matrix(d, rng);
  Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

// <L(s1) ... L(sk)> with L(s) Y = i [X(s) B(s), Y], from explicit
// system (x) truncated-bath matrices.
inline Matrix fock_moment(const Matrix& h, const Matrix& x, const FockBath& fock, const std::vector<double>& times) {
  const int d = static_cast<int>(h.rows());
  const int nb = fock.dim();
  std::vector<Matrix> xb;
  for (double s : times) xb.push_back(kron(heisenberg(h, x, s), fock.B(s)));
  Matrix out(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = 1.0;
      Matrix y = kron(e, fock.rho());
      for (auto it = xb.rbegin(); it != xb.rend(); ++it) y = Complex(0, 1) * (*it * y - y * *it);
      const Matrix r = trace_b(y, d, nb);
      for (int c = 0; c < d; ++c)
        for (int rr = 0; rr < d; ++rr) out(rr + c * d, i + j * d) = r(rr, c);
    }
  return out;
}

/// Least-squares slope of log y against log x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= x.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace oracle
