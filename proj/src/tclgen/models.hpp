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

// models.hpp — reference solutions: closed-form pure dephasing, a brute-force
// truncated system+bath simulation, and named preset configurations.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tclgen/algebra.hpp"
#include "tclgen/bath.hpp"
#include "tclgen/evolve.hpp"

namespace tclgen {

enum class Picture { Schrodinger, Interaction };

/// Exact reduced state when [H_S, X] = 0. In the eigenbasis of X with
/// eigenvalues x_j the interaction-picture coherences pick up
///   exp(alpha^2 [ (i/2)(x_j^2 - x_k^2) Gamma(t) - (1/2)(x_j - x_k)^2 Gamma1(t) ])
/// where Gamma and Gamma1 are the double integrals of D and D1.
/// Throws ArgumentError if the commutator exceeds 1e-12 (relative).
Matrix dephasing_exact(const Matrix& rho0, const SystemModel& model, const BathSpec& bath, double t,
                       Picture picture = Picture::Schrodinger);

/// int_0^t dt1 int_0^t1 dt2 D(t1 - t2), closed form.
double dissipation_double_integral(const BathSpec& bath, double t);
/// int_0^t dt1 int_0^t1 dt2 D1(t1 - t2), closed form.
double noise_double_integral(const BathSpec& bath, double t);

inline constexpr long kMaxTotalDimension = 4096;

struct TruncatedBathConfig {
  /// Fock levels kept per mode, >= 2.
  int fock_levels;
  BathSpec bath;
  /// Repeat the run with fock_levels + 2 and warn above 1e-6 change.
  bool check_truncation = true;
};

/// Smallest N with sum_{n >= N} exp(-beta omega n) / Z < 1e-10 for every mode
/// (at least 2; zero temperature gives 2).
int default_fock_levels(const BathSpec& bath);

/// System plus truncated oscillators, H = H_S + H_B - alpha X B with
/// B = sum_n kappa_n x_n, diagonalized once at construction.
class SmallBathOracle {
 public:
  SmallBathOracle(const SystemModel& model, const BathSpec& bath, int fock_levels);

  long total_dim() const { return total_dim_; }
  int fock_levels() const { return fock_levels_; }

  /// Renormalized Gibbs state of the kept levels (ground state at zero temperature).
  const Matrix& bath_state() const { return bath_state_; }
  /// B in the truncated bath space.
  const Matrix& bath_coupling() const { return bath_coupling_; }

  /// Reduced state at time t in the requested picture.
  Matrix reduced_state(const Matrix& rho0, double t, Picture picture = Picture::Interaction) const;
  std::vector<Matrix> reduced_states(const Matrix& rho0, std::span<const double> times,
                                     Picture picture = Picture::Interaction) const;

 private:
  SystemModel model_;
  int fock_levels_;
  long total_dim_;
  int bath_dim_;
  Matrix bath_state_;
  Matrix bath_coupling_;
  Eigen::VectorXd energies_;
  Matrix eigenvectors_;
};

/// Interaction-picture reduced trajectory from the truncated oracle.
Trajectory exact_small_bath(const Matrix& rho0, const SystemModel& model, const TruncatedBathConfig& config,
                            std::span<const double> t_grid);

struct Preset {
  std::string name;
  SystemModel model;
  BathSpec bath;
  Matrix rho0;
  /// True when the coupling commutes with H_S and dephasing_exact applies.
  bool dephasing;
};

std::vector<std::string> preset_names();
/// std::nullopt for unknown names.
std::optional<Preset> find_preset(std::string_view name);

/// All-ones / d: the pure state (|0> + ... + |d-1>)/sqrt(d).
Matrix uniform_superposition(int dim);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

}  // namespace tclgen
