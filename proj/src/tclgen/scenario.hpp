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

// scenario.hpp — batch runs: CSV artifacts, text report, scaling study.

#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tclgen/config.hpp"

namespace tclgen {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitEquivalence = 2,
  kExitNumeric = 3,
  kExitInvalidInput = 4,
};

/// Environment variable that overrides the config's output directory.
inline constexpr const char* kOutDirEnv = "TCLGEN_OUT_DIR";

/// Residual bound for the shared-grid cross-route checks.
inline constexpr double kCrossRouteTolerance = 1e-8;

struct RunOptions {
  /// --out; wins over the environment and the config.
  std::optional<std::string> out_dir;
  std::optional<int> order;
  std::optional<int> quad_nodes;
  bool verbose = false;
  /// Progress messages go here when verbose (stderr if null).
  std::ostream* log = nullptr;
};

struct ScenarioResult {
  int exit_code = kExitOk;
  std::string out_dir;
  std::vector<std::string> files;
  std::string report;
  /// Set when exit_code != 0.
  std::string error;
};

/// Output directory: --out, then TCLGEN_OUT_DIR, then the config, then ".".
std::string resolve_out_dir(const ScenarioConfig& config, const RunOptions& options);

/// Writes the artifacts selected in config.outputs. Never throws for input,
/// IO or numeric problems; they are reported through exit_code and error.
ScenarioResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Locale-independent CSV number formatting: scientific, 17 significant digits.
std::string format_number(double value);

/// First line of every CSV.
std::string csv_comment(const ScenarioConfig& config);

struct ScalingOptions {
  std::vector<double> alphas{0.025, 0.05, 0.1, 0.2};
  double t_max = 4.0;
  int fock_levels = 12;
  /// Output grid intervals; rk4 substeps land on generator nodes.
  int output_intervals = 40;
  int generator_intervals = 400;
  std::vector<int> orders{2, 4};
  QuadratureSpec quad;
  unsigned threads = 0;
};

struct ScalingResult {
  std::vector<double> alphas;
  std::vector<int> orders;
  /// errors[o][a]: max trace distance to the oracle over the grid.
  std::vector<std::vector<double>> errors;
  std::vector<double> slopes;
  std::vector<std::string> warnings;

  std::string to_csv(const std::string& comment) const;
  std::string summary() const;
};

/// Spin-boson preset against the truncated oracle over a ladder of couplings.
ScalingResult scaling_study(const ScalingOptions& options = {});

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace tclgen
