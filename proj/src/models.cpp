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

#include "tclgen/models.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace tclgen {

double dissipation_double_integral(const BathSpec& bath, double t) {
  double sum = 0.0;
  for (std::size_t n = 0; n < bath.modes().size(); ++n) {
    const double w = bath.modes()[n].omega;
    sum += bath.weight(n) * (t / w - std::sin(w * t) / (w * w));
  }
  return sum;
}

double noise_double_integral(const BathSpec& bath, double t) {
  double sum = 0.0;
  for (std::size_t n = 0; n < bath.modes().size(); ++n) {
    const double w = bath.modes()[n].omega;
    // 1 - cos(wt) = 2 sin^2(wt/2) keeps precision at small t.
    const double s = std::sin(0.5 * w * t);
    sum += bath.weight(n) * bath.thermal_factor(n) * 2.0 * s * s / (w * w);
  }
  return sum;
}

Matrix dephasing_exact(const Matrix& rho0, const SystemModel& model, const BathSpec& bath, double t,
                       Picture picture) {
  const Matrix& h = model.hamiltonian();
  const Matrix& x = model.coupling();
  if (rho0.rows() != model.dim() || rho0.cols() != model.dim())
    throw ArgumentError("initial state and model dimensions differ");
  const double scale = std::max(1.0, h.norm() * x.norm());
  if ((h * x - x * h).norm() > 1e-12 * scale)
    throw ArgumentError("dephasing_exact needs a coupling that commutes with the system Hamiltonian");
  if (t == 0.0) return rho0;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(x);
  const Eigen::VectorXd& xs = solver.eigenvalues();
  const Matrix& v = solver.eigenvectors();
  const double a2 = model.alpha() * model.alpha();
  const double gamma = dissipation_double_integral(bath, t);
  const double gamma1 = noise_double_integral(bath, t);

  Matrix r = v.adjoint() * rho0 * v;
  for (Eigen::Index j = 0; j < r.rows(); ++j) {
    for (Eigen::Index k = 0; k < r.cols(); ++k) {
      const double dx = xs(j) - xs(k);
      const double x2 = xs(j) * xs(j) - xs(k) * xs(k);
      r(j, k) *= std::exp(a2 * Complex(-0.5 * dx * dx * gamma1, 0.5 * x2 * gamma));
    }
  }
  Matrix out = v * r * v.adjoint();
  if (picture == Picture::Schrodinger) {
    const Matrix u = model.propagator(t);
    out = u * out * u.adjoint();
  }
  return out;
}

int default_fock_levels(const BathSpec& bath) {
  if (bath.beta().is_infinite()) return 2;
  int levels = 2;
  for (const Mode& mode : bath.modes()) {
    // Geometric tail: sum_{n >= N} q^n / Z = q^N with q = exp(-beta omega).
    const double log_q = -bath.beta().value() * mode.omega;
    const int n = static_cast<int>(std::ceil(std::log(1e-10) / log_q));
    levels = std::max(levels, n);
  }
  return levels;
}

namespace {

long checked_total_dim(int d, int levels, std::size_t modes) {
  long total = d;
  for (std::size_t m = 0; m < modes; ++m) {
    total *= levels;
    if (total > kMaxTotalDimension) return total;
  }
  return total;
}

Matrix embed(const Matrix& op, std::size_t slot, std::size_t modes, int levels) {
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t m = 0; m < modes; ++m)
    out = kron(out, m == slot ? op : Matrix::Identity(levels, levels).eval());
  return out;
}

}  // namespace

SmallBathOracle::SmallBathOracle(const SystemModel& model, const BathSpec& bath, int fock_levels)
    : model_(model), fock_levels_(fock_levels) {
  if (fock_levels < 2) throw ArgumentError("fock_levels must be >= 2");
  const std::size_t modes = bath.modes().size();
  total_dim_ = checked_total_dim(model.dim(), fock_levels, modes);
  if (total_dim_ > kMaxTotalDimension)
    throw ArgumentError("system+bath dimension exceeds " + std::to_string(kMaxTotalDimension));
  bath_dim_ = static_cast<int>(total_dim_ / model.dim());

  const int n = fock_levels;
  Matrix a = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Matrix a_dag = a.adjoint();

  Matrix h_bath = Matrix::Zero(bath_dim_, bath_dim_);
  bath_coupling_ = Matrix::Zero(bath_dim_, bath_dim_);
  bath_state_ = Matrix::Identity(1, 1);
  for (std::size_t m = 0; m < modes; ++m) {
    const Mode& mode = bath.modes()[m];
    Matrix number = Matrix::Zero(n, n);
    Matrix gibbs = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
      number(k, k) = mode.omega * (k + 0.5);
      if (bath.beta().is_infinite())
        gibbs(k, k) = k == 0 ? 1.0 : 0.0;
      else
        gibbs(k, k) = std::exp(-bath.beta().value() * mode.omega * k);
    }
    gibbs /= gibbs.trace();
    const Matrix position = std::sqrt(0.5 / (mode.mass * mode.omega)) * (a + a_dag);
    h_bath += embed(number, m, modes, n);
    bath_coupling_ += mode.kappa * embed(position, m, modes, n);
    bath_state_ = kron(bath_state_, gibbs);
  }

  const Matrix id_sys = Matrix::Identity(model.dim(), model.dim());
  const Matrix id_bath = Matrix::Identity(bath_dim_, bath_dim_);
  const Matrix h_total = kron(model.hamiltonian(), id_bath) + kron(id_sys, h_bath) -
                         model.alpha() * kron(model.coupling(), bath_coupling_);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h_total);
  if (solver.info() != Eigen::Success) throw NumericError("eigendecomposition of the total Hamiltonian failed");
  energies_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

Matrix SmallBathOracle::reduced_state(const Matrix& rho0, double t, Picture picture) const {
  return reduced_states(rho0, std::span<const double>(&t, 1), picture).front();
}

std::vector<Matrix> SmallBathOracle::reduced_states(const Matrix& rho0, std::span<const double> times,
                                                    Picture picture) const {
  const int d = model_.dim();
  if (rho0.rows() != d || rho0.cols() != d) throw ArgumentError("initial state and model dimensions differ");
  const Matrix& v = eigenvectors_;
  const Matrix r0 = v.adjoint() * kron(rho0, bath_state_) * v;
  std::vector<Matrix> states;
  states.reserve(times.size());
  Matrix r(r0.rows(), r0.cols());
  for (const double t : times) {
    const Vector phase = (-kI * t * energies_.cast<Complex>()).array().exp().matrix();
    r = phase.asDiagonal() * r0 * phase.conjugate().asDiagonal();
    // Only the diagonal bath blocks of v r v^dagger are needed for the partial trace.
    const Matrix w = v * r;
    Matrix out(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out(i, j) = w.middleRows(i * bath_dim_, bath_dim_)
                        .cwiseProduct(v.middleRows(j * bath_dim_, bath_dim_).conjugate())
                        .sum();
    if (picture == Picture::Interaction) {
      const Matrix u = model_.propagator(t);
      out = u.adjoint() * out * u;
    }
    states.push_back(std::move(out));
  }
  return states;
}

Trajectory exact_small_bath(const Matrix& rho0, const SystemModel& model, const TruncatedBathConfig& config,
                            std::span<const double> t_grid) {
  validate_density_matrix(rho0);
  if (t_grid.empty()) throw ArgumentError("time grid is empty");
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] > t_grid[k - 1])) throw ArgumentError("time grid must be strictly increasing");

  const SmallBathOracle oracle(model, config.bath, config.fock_levels);
  auto states = oracle.reduced_states(rho0, t_grid);
  if (t_grid[0] == 0.0) states[0] = rho0;
  Trajectory traj;
  for (std::size_t k = 0; k < t_grid.size(); ++k) record_state(traj, t_grid[k], std::move(states[k]));

  if (config.check_truncation) {
    const int bigger = config.fock_levels + 2;
    if (checked_total_dim(model.dim(), bigger, config.bath.modes().size()) > kMaxTotalDimension) {
      traj.warnings.push_back("truncation check skipped: " + std::to_string(bigger) +
                              " Fock levels exceed the dimension cap");
    } else {
      const SmallBathOracle finer(model, config.bath, bigger);
      const auto refined = finer.reduced_states(rho0, t_grid);
      double change = 0.0;
      for (std::size_t k = 0; k < t_grid.size(); ++k)
        change = std::max(change, (refined[k] - traj.states[k]).cwiseAbs().maxCoeff());
      if (change > 1e-6)
        traj.warnings.push_back("truncation sensitivity: raising Fock levels from " +
                                std::to_string(config.fock_levels) + " to " + std::to_string(bigger) +
                                " changes the reduced state by " + std::to_string(change));
    }
  }
  return traj;
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix uniform_superposition(int dim) {
  return Matrix::Constant(dim, dim, Complex(1.0 / dim, 0.0));
}

std::vector<std::string> preset_names() {
  return {"dephasing-single-mode", "spinboson-single-mode", "spinboson-two-mode"};
}

std::optional<Preset> find_preset(std::string_view name) {
  const auto beta = InverseTemperature::finite(1.0);
  const Matrix h = 0.5 * pauli_z();
  if (name == "dephasing-single-mode")
    return Preset{std::string(name), SystemModel(h, pauli_z(), 0.5), BathSpec({{1.0, 1.0, 1.0}}, beta),
                  uniform_superposition(2), true};
  if (name == "spinboson-single-mode")
    return Preset{std::string(name), SystemModel(h, pauli_x(), 0.1), BathSpec({{1.0, 1.0, 1.0}}, beta),
                  uniform_superposition(2), false};
  if (name == "spinboson-two-mode")
    return Preset{std::string(name), SystemModel(h, pauli_x(), 0.1),
                  BathSpec({{1.0, 1.0, 1.0}, {0.5, 2.0, 1.0}}, beta), uniform_superposition(2), false};
  return std::nullopt;
}

}  // namespace tclgen
