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

#include "tclgen/bath.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace tclgen {

InverseTemperature InverseTemperature::finite(double beta) {
  if (!std::isfinite(beta) || !(beta > 0.0))
    throw ArgumentError("beta must be a finite positive number (use infinite() for zero temperature)");
  return InverseTemperature(beta, false);
}

double InverseTemperature::coth_half(double omega) const {
  if (infinite_) return 1.0;
  return 1.0 / std::tanh(0.5 * value_ * omega);
}

BathSpec::BathSpec(std::vector<Mode> modes, InverseTemperature beta)
    : modes_(std::move(modes)), beta_(beta) {
  if (modes_.empty()) throw ArgumentError("bath needs at least one mode");
  weights_.reserve(modes_.size());
  thermal_.reserve(modes_.size());
  for (std::size_t n = 0; n < modes_.size(); ++n) {
    const Mode& m = modes_[n];
    if (!std::isfinite(m.kappa) || !std::isfinite(m.omega) || !std::isfinite(m.mass))
      throw ArgumentError("bath mode " + std::to_string(n) + " has a non-finite parameter");
    if (!(m.omega > 0.0))
      throw ArgumentError("bath mode " + std::to_string(n) + ": omega must be > 0");
    if (!(m.mass > 0.0))
      throw ArgumentError("bath mode " + std::to_string(n) + ": mass must be > 0");
    weights_.push_back(m.kappa * m.kappa / (m.mass * m.omega));
    thermal_.push_back(beta_.coth_half(m.omega));
  }
}

double BathSpec::dissipation_bound() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

double BathSpec::noise_bound() const {
  double s = 0.0;
  for (std::size_t n = 0; n < weights_.size(); ++n) s += weights_[n] * thermal_[n];
  return s;
}

double kernel_D(const BathSpec& bath, double tau) {
  double s = 0.0;
  const auto& modes = bath.modes();
  for (std::size_t n = 0; n < modes.size(); ++n)
    s += bath.weight(n) * std::sin(modes[n].omega * tau);
  return s;
}

double kernel_D1(const BathSpec& bath, double tau) {
  double s = 0.0;
  const auto& modes = bath.modes();
  for (std::size_t n = 0; n < modes.size(); ++n)
    s += bath.weight(n) * bath.thermal_factor(n) * std::cos(modes[n].omega * tau);
  return s;
}

Complex bath_correlation(const BathSpec& bath, double tau) {
  return {0.5 * kernel_D1(bath, tau), -0.5 * kernel_D(bath, tau)};
}

KernelTable tabulate_kernels(const BathSpec& bath, double t_max, int n_points) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ArgumentError("tabulate_kernels: t_max must be > 0");
  if (n_points < 2) throw ArgumentError("tabulate_kernels: need at least 2 points");
  KernelTable table;
  table.tau.resize(n_points);
  table.D.resize(n_points);
  table.D1.resize(n_points);
  const double h = t_max / (n_points - 1);
  for (int k = 0; k < n_points; ++k) {
    const double tau = (k == n_points - 1) ? t_max : k * h;
    table.tau[k] = tau;
    table.D[k] = kernel_D(bath, tau);
    table.D1[k] = kernel_D1(bath, tau);
  }
  return table;
}

BathSpec discretize_spectral_density(const std::function<double(double)>& J, double omega_max,
                                     int n_modes, InverseTemperature beta) {
  if (!(omega_max > 0.0)) throw ArgumentError("discretize_spectral_density: omega_max must be > 0");
  if (n_modes < 1) throw ArgumentError("discretize_spectral_density: need at least one mode");
  const double dw = omega_max / n_modes;
  std::vector<Mode> modes;
  modes.reserve(n_modes);
  for (int k = 0; k < n_modes; ++k) {
    const double w = (k + 0.5) * dw;
    const double j = J(w);
    if (!std::isfinite(j) || j < 0.0)
      throw ArgumentError("spectral density must be finite and non-negative");
    modes.push_back({std::sqrt(2.0 * j * dw * w / std::numbers::pi), w, 1.0});
  }
  return BathSpec(std::move(modes), beta);
}

}  // namespace tclgen
