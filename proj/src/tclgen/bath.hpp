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

// bath.hpp — harmonic reservoir and its two-point kernels.
//
// The reservoir is a finite set of oscillators (kappa_n, omega_n, m_n) at
// inverse temperature beta, coupled through
//
//   B(t) = sum_n kappa_n (x_n cos(omega_n t) + p_n / (m_n omega_n) sin(omega_n t)).
//
// Units: hbar = k_B = 1. The kernels are evaluated in closed form:
//
//   D(tau)  = i <[B(tau), B(0)]>          = sum_n w_n sin(omega_n tau)
//   D1(tau) = <{B(tau), B(0)}>            = sum_n w_n coth(beta omega_n / 2) cos(omega_n tau)
//   C(tau)  = <B(tau) B(0)>               = (D1(tau) - i D(tau)) / 2
//
// with w_n = kappa_n^2 / (m_n omega_n).

#pragma once

#include <functional>
#include <vector>

#include "tclgen/common.hpp"

namespace tclgen {

struct Mode {
  double kappa;
  double omega;
  double mass;
};

/// Inverse temperature with an explicit zero-temperature state.
class InverseTemperature {
 public:
  static InverseTemperature finite(double beta);
  static InverseTemperature infinite() { return InverseTemperature(0.0, true); }

  bool is_infinite() const { return infinite_; }
  /// Only meaningful when finite.
  double value() const { return value_; }

  /// coth(beta * omega / 2); exactly 1 at zero temperature.
  double coth_half(double omega) const;

 private:
  InverseTemperature(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

class BathSpec {
 public:
  /// Throws ArgumentError unless every mode has omega > 0, mass > 0 and all
  /// parameters are finite.
  BathSpec(std::vector<Mode> modes, InverseTemperature beta);

  const std::vector<Mode>& modes() const { return modes_; }
  const InverseTemperature& beta() const { return beta_; }

  /// kappa^2 / (m omega) for mode n.
  double weight(std::size_t n) const { return weights_[n]; }
  /// coth(beta omega_n / 2) for mode n.
  double thermal_factor(std::size_t n) const { return thermal_[n]; }

  /// Sum_n w_n, the bound on |D|.
  double dissipation_bound() const;
  /// Sum_n w_n coth(beta omega_n / 2), the bound on |D1|.
  double noise_bound() const;

 private:
  std::vector<Mode> modes_;
  InverseTemperature beta_;
  std::vector<double> weights_;
  std::vector<double> thermal_;
};

double kernel_D(const BathSpec& bath, double tau);
double kernel_D1(const BathSpec& bath, double tau);
Complex bath_correlation(const BathSpec& bath, double tau);

struct KernelTable {
  std::vector<double> tau;
  std::vector<double> D;
  std::vector<double> D1;

  double step() const { return tau.size() > 1 ? tau[1] - tau[0] : 0.0; }
};

/// Uniform grid on [0, t_max] with n_points nodes, analytic values per node.
KernelTable tabulate_kernels(const BathSpec& bath, double t_max, int n_points);

/// Discretizes a spectral density J(omega) into n_modes unit-mass modes by
/// midpoint sampling on [0, omega_max]. Convention:
///   J(omega) = (pi / 2) sum_n kappa_n^2 / (m_n omega_n) delta(omega - omega_n),
/// so that D(tau) = (2 / pi) int J(omega) sin(omega tau) d omega.
BathSpec discretize_spectral_density(const std::function<double(double)>& J,
                                     double omega_max, int n_modes,
                                     InverseTemperature beta);

}  // namespace tclgen
