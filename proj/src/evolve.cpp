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

#include "tclgen/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <boost/numeric/odeint.hpp>

#include "tclgen/parallel.hpp"

namespace tclgen {

namespace odeint = boost::numeric::odeint;

const char* to_string(Stepper stepper) {
  return stepper == Stepper::Rk4Fixed ? "rk4-fixed" : "rk45-adaptive";
}

std::optional<Stepper> parse_stepper(std::string_view name) {
  if (name == "rk4-fixed" || name == "rk4") return Stepper::Rk4Fixed;
  if (name == "rk45-adaptive" || name == "rk45") return Stepper::Rk45Adaptive;
  return std::nullopt;
}

double Trajectory::max_trace_deviation() const {
  return trace_deviation.empty() ? 0.0 : *std::max_element(trace_deviation.begin(), trace_deviation.end());
}

double Trajectory::max_herm_deviation() const {
  return herm_deviation.empty() ? 0.0 : *std::max_element(herm_deviation.begin(), herm_deviation.end());
}

double Trajectory::min_min_eigenvalue() const {
  return min_eigenvalue.empty() ? 0.0 : *std::min_element(min_eigenvalue.begin(), min_eigenvalue.end());
}

namespace {

double min_hermitian_eigenvalue(const Matrix& rho) {
  const Matrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void check_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw ArgumentError("time grid is empty");
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] > t_grid[k - 1])) throw ArgumentError("time grid must be strictly increasing");
  for (double t : t_grid)
    if (!std::isfinite(t)) throw ArgumentError("time grid has non-finite entries");
}

using State = std::vector<Complex>;

}  // namespace

void record_state(Trajectory& trajectory, double t, Matrix rho) {
  trajectory.times.push_back(t);
  trajectory.trace_deviation.push_back(std::abs(rho.trace() - Complex(1.0, 0.0)));
  trajectory.herm_deviation.push_back(hermiticity_deviation(rho));
  trajectory.min_eigenvalue.push_back(min_hermitian_eigenvalue(rho));
  trajectory.states.push_back(std::move(rho));
}

void validate_density_matrix(const Matrix& rho, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() < 1) throw ArgumentError("density matrix must be square");
  if (!rho.allFinite()) throw ArgumentError("density matrix has non-finite entries");
  if (hermiticity_deviation(rho) > tol) throw ArgumentError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol) throw ArgumentError("density matrix must have unit trace");
  if (min_hermitian_eigenvalue(rho) < -tol) throw ArgumentError("density matrix is not positive semidefinite");
}

Trajectory propagate(const Matrix& rho0, const GeneratorFn& generator, std::span<const double> t_grid,
                     const PropagationOptions& options) {
  validate_density_matrix(rho0);
  check_grid(t_grid);
  const int d = static_cast<int>(rho0.rows());
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;

  Trajectory traj;
  record_state(traj, t_grid[0], rho0);
  if (t_grid.size() == 1) return traj;

  Matrix g(n, n);
  if (options.stepper == Stepper::Rk4Fixed) {
    if (!(options.step > 0.0)) throw ArgumentError("rk4 step must be > 0");
    Vector v = vectorize(rho0);
    Vector k1(n), k2(n), k3(n), k4(n);
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
      const double t0 = t_grid[k - 1];
      const double span = t_grid[k] - t0;
      const int substeps = std::max(1, static_cast<int>(std::ceil(span / options.step - 1e-9)));
      const double h = span / substeps;
      for (int s = 0; s < substeps; ++s) {
        const double t = t0 + s * h;
        generator(t, g);
        k1 = g * v;
        generator(t + 0.5 * h, g);
        k2 = g * (v + 0.5 * h * k1);
        k3 = g * (v + 0.5 * h * k2);
        generator(t + h, g);
        k4 = g * (v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      record_state(traj, t_grid[k], unvectorize(v, d));
    }
    return traj;
  }

  State x(rho0.data(), rho0.data() + n);
  auto rhs = [&](const State& in, State& out, double t) {
    generator(t, g);
    Eigen::Map<const Vector> vin(in.data(), n);
    Eigen::Map<Vector> vout(out.data(), n);
    vout.noalias() = g * vin;
  };
  std::size_t next = 1;
  auto observer = [&](const State& s, double t) {
    if (t == t_grid[0]) return;
    Eigen::Map<const Vector> v(s.data(), n);
    record_state(traj, t_grid[next++], unvectorize(v, d));
  };
  const double span = t_grid.back() - t_grid.front();
  const double dt0 = std::min(1e-3 * span, t_grid[1] - t_grid[0]);
  try {
    odeint::integrate_times(
        odeint::make_dense_output(options.abs_tol, options.rel_tol, odeint::runge_kutta_dopri5<State>()), rhs, x,
        t_grid.begin(), t_grid.end(), dt0, observer, odeint::max_step_checker(100000));
  } catch (const odeint::odeint_error& e) {
    throw NumericError(std::string("adaptive integration failed: ") + e.what());
  }
  if (traj.times.size() != t_grid.size()) throw NumericError("adaptive integration stopped early");
  return traj;
}

Trajectory propagate(const Matrix& rho0, const Generator& generator, std::span<const double> t_grid,
                     const PropagationOptions& options) {
  if (rho0.rows() != generator.dim()) throw ArgumentError("initial state and generator dimensions differ");
  return propagate(
      rho0, [&generator](double t, Matrix& out) { generator.evaluate_into(t, out); }, t_grid, options);
}

double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix diff = a - b;
  const Matrix h = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

namespace {

InvertibilityRecord singular_record(double t, const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  return {t, smin, cond};
}

}  // namespace

std::vector<std::vector<InvertibilityRecord>> invertibility_scan(const SystemModel& model, const BathSpec& bath,
                                                                 std::span<const double> alphas,
                                                                 std::span<const double> t_grid,
                                                                 const QuadratureSpec& quad, unsigned threads) {
  check_grid(t_grid);
  const int d = model.dim();
  const Matrix id = Matrix::Identity(d * d, d * d);
  // The phase does not depend on alpha; compute it once per time.
  std::vector<Matrix> phases(t_grid.size());
  parallel_for(t_grid.size(), threads, [&](std::size_t k) {
    phases[k] = t_grid[k] > 0.0 ? influence_phase(model, bath, t_grid[k], quad).matrix() : Matrix::Zero(d * d, d * d);
  });
  std::vector<std::vector<InvertibilityRecord>> out(alphas.size());
  parallel_for(alphas.size(), threads, [&](std::size_t a) {
    const double a2 = alphas[a] * alphas[a];
    out[a].reserve(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      if (t_grid[k] == 0.0 || a2 == 0.0)
        out[a].push_back(singular_record(t_grid[k], id));
      else
        out[a].push_back(singular_record(t_grid[k], id + a2 * phases[k]));
    }
  });
  return out;
}

std::vector<InvertibilityRecord> invertibility_diagnostic(const SystemModel& model, const BathSpec& bath,
                                                          std::span<const double> t_grid,
                                                          const QuadratureSpec& quad) {
  const double alpha = model.alpha();
  return invertibility_scan(model, bath, std::span<const double>(&alpha, 1), t_grid, quad, 1).front();
}

std::vector<double> uniform_grid(double t_end, int intervals) {
  if (intervals < 1) throw ArgumentError("grid needs at least one interval");
  if (!(t_end > 0.0)) throw ArgumentError("grid end must be > 0");
  std::vector<double> grid(intervals + 1);
  for (int k = 0; k <= intervals; ++k) grid[k] = (k == intervals) ? t_end : t_end * k / intervals;
  return grid;
}

}  // namespace tclgen
