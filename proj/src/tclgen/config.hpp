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

// config.hpp — scenario files: sectioned key = value text.
//
//   [model]   preset, dim, H_S, X, alpha, rho0
//   [bath]    modes = kappa,omega,mass; ...   beta = <number> | inf
//   [run]     t_max, points, order, stepper, step, abs_tol, rel_tol,
//             quadrature, quad_nodes, quad_tol, generator_intervals,
//             generator_times, alpha_scan, fock_levels, threads
//   [outputs] dir, kernels, generator, trajectory, diagnostic, report
//
// Matrices are row-major comma lists of complex literals (1, -0.5, 2i, 1-2i).
// The full schema with examples lives in docs/formats.md.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tclgen/bath.hpp"
#include "tclgen/evolve.hpp"
#include "tclgen/quadrature.hpp"

namespace tclgen {

struct ConfigDiagnostic {
  /// 1-based; 0 when the problem is not tied to a line (missing field).
  int line = 0;
  int column = 0;
  /// "section.key" when known.
  std::string field;
  std::string message;

  std::string to_string() const;
};

/// Carries every problem found in a config, not just the first.
class ConfigError : public ArgumentError {
 public:
  explicit ConfigError(std::vector<ConfigDiagnostic> diagnostics);
  const std::vector<ConfigDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ConfigDiagnostic> diagnostics_;
};

struct OutputSelection {
  bool kernels = true;
  bool generator = true;
  bool trajectory = true;
  bool diagnostic = true;
  bool report = true;
  std::string dir = ".";
  /// True when dir came from the config file rather than the default.
  bool dir_set = false;
};

struct ScenarioConfig {
  std::optional<std::string> preset;
  Matrix hamiltonian;
  Matrix coupling;
  Matrix rho0;
  double alpha = 0.0;
  std::vector<Mode> modes;
  InverseTemperature beta = InverseTemperature::infinite();

  double t_max = 4.0;
  /// Output grid points including t = 0.
  int points = 41;
  int order = 2;
  PropagationOptions propagation;
  QuadratureSpec quad;
  int generator_intervals = 400;
  std::vector<double> generator_times{0.5, 1.0, 2.0};
  std::vector<double> alpha_scan{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0,
                                 1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0};
  /// Unset: default_fock_levels(bath).
  std::optional<int> fock_levels;
  unsigned threads = 0;
  OutputSelection outputs;

  /// FNV-1a 64 of the source text, hex.
  std::string source_hash;

  SystemModel model() const;
  BathSpec bath() const;
};

/// Throws ConfigError listing all syntax and semantic problems.
ScenarioConfig parse_config(std::string_view text);

ScenarioConfig load_config(const std::string& path);

std::uint64_t fnv1a64(std::string_view text);
std::string hex64(std::uint64_t value);

/// Parses "1", "-2.5e-3", "i", "-i", "3i", "1+2i", "0.5-1e-2i".
std::optional<Complex> parse_complex(std::string_view text);

}  // namespace tclgen
