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

// evolve.hpp — integration of d rho / dt = K(t) rho and the invertibility
// diagnostic for the truncated moment expansion.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tclgen/algebra.hpp"
#include "tclgen/bath.hpp"
#include "tclgen/quadrature.hpp"
#include "tclgen/tcl.hpp"

namespace tclgen {

enum class Stepper { Rk4Fixed, Rk45Adaptive };

const char* to_string(Stepper stepper);
std::optional<Stepper> parse_stepper(std::string_view name);

struct PropagationOptions {
  Stepper stepper = Stepper::Rk45Adaptive;
  /// Largest rk4 step; each output interval is split into equal substeps.
  double step = 0.01;
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix> states;
  std::vector<double> trace_deviation;
  std::vector<double> herm_deviation;
  std::vector<double> min_eigenvalue;
  std::vector<std::string> warnings;

  double max_trace_deviation() const;
  double max_herm_deviation() const;
  double min_min_eigenvalue() const;
};

/// Appends rho at time t together with its monitors.
void record_state(Trajectory& trajectory, double t, Matrix rho);

/// Throws ArgumentError unless rho is Hermitian, unit-trace and positive
/// semidefinite within tol.
void validate_density_matrix(const Matrix& rho, double tol = 1e-10);

/// Linear ODE d vec(rho)/dt = G(t) vec(rho); G(t) written into its second
/// argument as a d^2 x d^2 matrix.
using GeneratorFn = std::function<void(double, Matrix&)>;

Trajectory propagate(const Matrix& rho0, const GeneratorFn& generator, std::span<const double> t_grid,
                     const PropagationOptions& options = {});

Trajectory propagate(const Matrix& rho0, const Generator& generator, std::span<const double> t_grid,
                     const PropagationOptions& options = {});

/// Half the trace norm of a - b.
double trace_distance(const Matrix& a, const Matrix& b);

struct InvertibilityRecord {
  double time;
  double sigma_min;
  double condition_number;
};

/// Singular values of M(t) = I + alpha^2 int_0^t dt1 int_0^t1 dt2 <L(t1) L(t2)>.
std::vector<InvertibilityRecord> invertibility_diagnostic(const SystemModel& model, const BathSpec& bath,
                                                          std::span<const double> t_grid,
                                                          const QuadratureSpec& quad);

/// The same records for every coupling in `alphas` (model.alpha() ignored);
/// result[a][k] belongs to alphas[a] and t_grid[k].
std::vector<std::vector<InvertibilityRecord>> invertibility_scan(const SystemModel& model, const BathSpec& bath,
                                                                 std::span<const double> alphas,
                                                                 std::span<const double> t_grid,
                                                                 const QuadratureSpec& quad, unsigned threads = 0);

/// Uniform grid t0, t0 + dt, ..., with the last point exactly t_end.
std::vector<double> uniform_grid(double t_end, int intervals);

}  // namespace tclgen
