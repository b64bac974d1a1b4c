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

#include "tclgen/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tclgen/cumulant.hpp"
#include "tclgen/models.hpp"
#include "tclgen/parallel.hpp"
#include "tclgen/tcl.hpp"

#ifndef TCLGEN_VERSION_STRING
#define TCLGEN_VERSION_STRING "0.0.0"
#endif

namespace tclgen {

namespace fs = std::filesystem;

namespace {

/// The truncated oracle is only run by default up to this total dimension.
constexpr long kScenarioOracleDim = 600;

std::string shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

class Logger {
 public:
  explicit Logger(const RunOptions& options)
      : enabled_(options.verbose), out_(options.log ? *options.log : std::cerr) {}
  void operator()(const std::string& message) const {
    if (enabled_) out_ << "[tclgen] " << message << '\n';
  }

 private:
  bool enabled_;
  std::ostream& out_;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

fs::path prepare_dir(const std::string& dir) {
  const fs::path path(dir);
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec || !fs::is_directory(path)) throw IoError("cannot create output directory '" + dir + "'");
  return path;
}

std::string kernels_csv(const ScenarioConfig& cfg, const BathSpec& bath) {
  const int n = std::min(10 * (cfg.points - 1) + 1, 100001);
  const KernelTable table = tabulate_kernels(bath, cfg.t_max, n);
  std::string out = csv_comment(cfg) + "tau,D,D1,C_re,C_im\n";
  for (std::size_t k = 0; k < table.tau.size(); ++k) {
    const Complex c = bath_correlation(bath, table.tau[k]);
    out += format_number(table.tau[k]) + ',' + format_number(table.D[k]) + ',' + format_number(table.D1[k]) + ',' +
           format_number(c.real()) + ',' + format_number(c.imag()) + '\n';
  }
  return out;
}

// One CSV row per matrix row; entries interleaved as re, im.
std::string generator_csv(const ScenarioConfig& cfg, int order, double alpha, const Matrix& k2, const Matrix& k4) {
  const Eigen::Index n = k2.rows();
  std::string out = csv_comment(cfg) + "matrix,row";
  for (Eigen::Index c = 0; c < n; ++c) out += ",c" + std::to_string(c) + "_re,c" + std::to_string(c) + "_im";
  out += '\n';
  const double a2 = alpha * alpha;
  Matrix total = a2 * k2;
  if (order == 4) total += a2 * a2 * k4;
  auto block = [&](const char* name, const Matrix& m) {
    for (Eigen::Index r = 0; r < n; ++r) {
      out += std::string(name) + ',' + std::to_string(r);
      for (Eigen::Index c = 0; c < n; ++c)
        out += ',' + format_number(m(r, c).real()) + ',' + format_number(m(r, c).imag());
      out += '\n';
    }
  };
  block("K2", k2);
  if (order == 4) block("K4", k4);
  block("K", total);
  return out;
}

std::string trajectory_csv(const ScenarioConfig& cfg, const Trajectory& traj) {
  const int d = traj.states.empty() ? 0 : static_cast<int>(traj.states.front().rows());
  std::string out = csv_comment(cfg) + "time";
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const std::string idx = std::to_string(i) + '_' + std::to_string(j);
      out += ",rho_" + idx + "_re,rho_" + idx + "_im";
    }
  out += ",trace_deviation,herm_deviation,min_eigenvalue\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out += format_number(traj.times[k]);
    const Matrix& rho = traj.states[k];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out += ',' + format_number(rho(i, j).real()) + ',' + format_number(rho(i, j).imag());
    out += ',' + format_number(traj.trace_deviation[k]) + ',' + format_number(traj.herm_deviation[k]) + ',' +
           format_number(traj.min_eigenvalue[k]) + '\n';
  }
  return out;
}

struct CrossRouteRow {
  double time;
  double k2_residual;
  double k4_residual = -1.0;
  double k4_forms_residual = -1.0;
  double k4_forms_bound = -1.0;
};

double relative(const Matrix& a, const Matrix& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale > 0.0 ? (a - b).norm() / scale : 0.0;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

std::string csv_comment(const ScenarioConfig& config) {
  return std::string("# tclgen ") + TCLGEN_VERSION_STRING + " config=" + config.source_hash + '\n';
}

std::string resolve_out_dir(const ScenarioConfig& config, const RunOptions& options) {
  if (options.out_dir) return *options.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  if (config.outputs.dir_set) return config.outputs.dir;
  return ".";
}

ScenarioResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  ScenarioResult result;
  const Logger log(options);
  std::ostringstream report;
  std::vector<std::string> warnings;
  bool equivalence_failed = false;

  try {
    ScenarioConfig cfg = config;
    if (options.order) {
      if (*options.order != 2 && *options.order != 4) throw ArgumentError("order must be 2 or 4");
      cfg.order = *options.order;
    }
    if (options.quad_nodes) {
      if (*options.quad_nodes < 4) throw ArgumentError("quadrature nodes must be >= 4");
      cfg.quad.nodes_per_unit_time = *options.quad_nodes;
    }
    result.out_dir = resolve_out_dir(cfg, options);
    const fs::path dir = prepare_dir(result.out_dir);
    auto emit = [&](const std::string& name, const std::string& content) {
      write_file(dir / name, content);
      result.files.push_back((dir / name).string());
      log("wrote " + (dir / name).string());
    };

    const SystemModel model = cfg.model();
    const BathSpec bath = cfg.bath();
    const auto grid = uniform_grid(cfg.t_max, cfg.points - 1);

    report << "tclgen " << TCLGEN_VERSION_STRING << '\n'
           << "config_hash = " << cfg.source_hash << '\n'
           << "preset = " << cfg.preset.value_or("none") << '\n'
           << "dim = " << model.dim() << '\n'
           << "alpha = " << shortest(cfg.alpha) << '\n'
           << "modes = " << bath.modes().size() << '\n'
           << "beta = " << (bath.beta().is_infinite() ? std::string("inf") : shortest(bath.beta().value())) << '\n'
           << "order = " << cfg.order << '\n'
           << "quadrature = " << to_string(cfg.quad.scheme) << " nodes_per_unit_time=" << cfg.quad.nodes_per_unit_time
           << " tolerance=" << shortest(cfg.quad.tolerance) << '\n'
           << "stepper = " << to_string(cfg.propagation.stepper) << '\n'
           << "t_max = " << shortest(cfg.t_max) << '\n'
           << "points = " << cfg.points << '\n';

    if (cfg.outputs.kernels) emit("kernels.csv", kernels_csv(cfg, bath));

    if (cfg.outputs.generator || cfg.outputs.report) {
      std::vector<double> times;
      for (double t : cfg.generator_times)
        if (t > 0.0) times.push_back(t);
      std::vector<CrossRouteRow> rows(times.size());
      std::vector<Matrix> k2(times.size()), k4(times.size());
      log("cross-route checks at " + std::to_string(times.size()) + " times");
      parallel_for(times.size(), cfg.threads, [&](std::size_t i) {
        const double t = times[i];
        k2[i] = K2_influence(model, bath, t, cfg.quad).matrix();
        rows[i].time = t;
        rows[i].k2_residual = relative(k2[i], K_n_cumulant(model, bath, t, 2, cfg.quad).matrix());
        if (cfg.order == 4) {
          k4[i] = K4_influence(model, bath, t, cfg.quad).matrix();
          const K4CumulantForms forms = K4_cumulant_forms(model, bath, t, cfg.quad);
          rows[i].k4_residual = relative(k4[i], forms.time_ordered.matrix());
          const double scale = std::max(forms.ordered_norm, forms.product_norm);
          rows[i].k4_forms_residual = scale > 0.0 ? forms.difference_norm / scale : 0.0;
          rows[i].k4_forms_bound = 10.0 * cfg.quad.tolerance;
        }
      });
      report << "\n[cross-route]\n";
      for (const auto& row : rows) {
        const std::string at = "t=" + shortest(row.time);
        report << at << " K2 influence vs cumulant = " << format_number(row.k2_residual) << '\n';
        if (row.k2_residual > kCrossRouteTolerance) equivalence_failed = true;
        if (cfg.order == 4) {
          report << at << " K4 influence vs ordered cumulant = " << format_number(row.k4_residual) << '\n'
                 << at << " K4 ordered vs unordered cumulant = " << format_number(row.k4_forms_residual)
                 << " (bound " << shortest(row.k4_forms_bound) << ")\n";
          if (row.k4_residual > kCrossRouteTolerance || row.k4_forms_residual > row.k4_forms_bound)
            equivalence_failed = true;
        }
      }
      report << "tolerance = " << shortest(kCrossRouteTolerance) << '\n'
             << "status = " << (equivalence_failed ? "violation" : "ok") << '\n';
      if (cfg.outputs.generator)
        for (std::size_t i = 0; i < times.size(); ++i)
          emit("generator_t" + shortest(times[i]) + ".csv", generator_csv(cfg, cfg.order, cfg.alpha, k2[i], k4[i]));
    }

    if (cfg.outputs.trajectory || cfg.outputs.report) {
      log("building order-" + std::to_string(cfg.order) + " generator on " +
          std::to_string(cfg.generator_intervals + 1) + " nodes");
      const Generator gen = build_generator(model, bath, cfg.order, cfg.quad,
                                            GeneratorGrid{cfg.t_max, cfg.generator_intervals, cfg.threads});
      for (const auto& w : gen.warnings()) warnings.push_back(w);
      log("propagating");
      const Trajectory traj = propagate(cfg.rho0, gen, grid, cfg.propagation);
      if (cfg.outputs.trajectory) emit("trajectory.csv", trajectory_csv(cfg, traj));

      report << "\n[monitors]\n"
             << "max_trace_deviation = " << format_number(traj.max_trace_deviation()) << '\n'
             << "max_herm_deviation = " << format_number(traj.max_herm_deviation()) << '\n'
             << "min_eigenvalue = " << format_number(traj.min_min_eigenvalue()) << '\n';

      report << "\n[oracle]\n";
      const Matrix& h = model.hamiltonian();
      const Matrix& x = model.coupling();
      const bool commuting = (h * x - x * h).norm() <= 1e-12 * std::max(1.0, h.norm() * x.norm());
      if (commuting) {
        double max_td = 0.0, max_coh = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
          const Matrix exact = dephasing_exact(cfg.rho0, model, bath, grid[k], Picture::Interaction);
          max_td = std::max(max_td, trace_distance(exact, traj.states[k]));
          for (Eigen::Index i = 0; i < exact.rows(); ++i)
            for (Eigen::Index j = 0; j < exact.cols(); ++j)
              if (i != j) max_coh = std::max(max_coh, std::abs(exact(i, j) - traj.states[k](i, j)));
        }
        report << "kind = dephasing_exact\n"
               << "max_trace_distance = " << format_number(max_td) << '\n'
               << "max_coherence_error = " << format_number(max_coh) << '\n';
      } else {
        const int levels = cfg.fock_levels.value_or(default_fock_levels(bath));
        long total = model.dim();
        for (std::size_t m = 0; m < bath.modes().size() && total <= kMaxTotalDimension; ++m) total *= levels;
        const bool forced = cfg.fock_levels.has_value();
        if (total > (forced ? kMaxTotalDimension : kScenarioOracleDim)) {
          report << "kind = none\n"
                 << "reason = system+bath dimension " << total << " with " << levels
                 << " Fock levels per mode is too large; set run.fock_levels to force\n";
        } else {
          log("running truncated oracle with " + std::to_string(levels) + " Fock levels");
          const Trajectory exact = exact_small_bath(cfg.rho0, model, TruncatedBathConfig{levels, bath, true}, grid);
          for (const auto& w : exact.warnings) warnings.push_back(w);
          double max_td = 0.0;
          for (std::size_t k = 0; k < grid.size(); ++k)
            max_td = std::max(max_td, trace_distance(exact.states[k], traj.states[k]));
          report << "kind = exact_small_bath\n"
                 << "fock_levels = " << levels << '\n'
                 << "max_trace_distance = " << format_number(max_td) << '\n';
        }
      }
    }

    if (cfg.outputs.diagnostic) {
      log("invertibility scan over " + std::to_string(cfg.alpha_scan.size()) + " couplings");
      std::vector<double> alphas = cfg.alpha_scan;
      std::sort(alphas.begin(), alphas.end());
      alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
      const auto scan = invertibility_scan(model, bath, alphas, grid, cfg.quad, cfg.threads);
      std::string csv = csv_comment(cfg) + "alpha,time,sigma_min,condition_number\n";
      for (std::size_t a = 0; a < alphas.size(); ++a)
        for (const auto& rec : scan[a])
          csv += format_number(alphas[a]) + ',' + format_number(rec.time) + ',' + format_number(rec.sigma_min) + ',' +
                 format_number(rec.condition_number) + '\n';
      emit("diagnostic.csv", csv);

      std::size_t monotone = 0;
      double floor = 1.0, floor_alpha = 0.0, floor_time = 0.0;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        bool ok = true;
        for (std::size_t a = 1; a < alphas.size(); ++a)
          if (scan[a][k].sigma_min > scan[a - 1][k].sigma_min) ok = false;
        if (ok) ++monotone;
        for (std::size_t a = 0; a < alphas.size(); ++a)
          if (scan[a][k].sigma_min < floor) {
            floor = scan[a][k].sigma_min;
            floor_alpha = alphas[a];
            floor_time = grid[k];
          }
      }
      report << "\n[diagnostic]\n"
             << "alphas = " << alphas.size() << '\n'
             << "sigma_min_nonincreasing_in_alpha = " << monotone << '/' << grid.size() << " times\n"
             << "smallest_sigma_min = " << format_number(floor) << " at alpha=" << shortest(floor_alpha)
             << " t=" << shortest(floor_time) << '\n';
      // Largest alpha up to which sigma_min falls monotonically at every grid time.
      std::size_t prefix = alphas.empty() ? 0 : alphas.size() - 1;
      for (std::size_t k = 0; k < grid.size(); ++k)
        for (std::size_t a = 1; a <= prefix; ++a)
          if (scan[a][k].sigma_min > scan[a - 1][k].sigma_min) {
            prefix = a - 1;
            break;
          }
      if (!alphas.empty())
        report << "sigma_min_nonincreasing_for_alpha_up_to = " << shortest(alphas[prefix]) << '\n';
      if (!alphas.empty())
        report << "sigma_min_at_t_max = " << format_number(scan.front().back().sigma_min) << " (alpha="
               << shortest(alphas.front()) << ") .. " << format_number(scan.back().back().sigma_min)
               << " (alpha=" << shortest(alphas.back()) << ")\n";
    }

    report << "\n[warnings]\n";
    for (const auto& w : warnings) report << w << '\n';
    result.exit_code = equivalence_failed ? kExitEquivalence : kExitOk;
    if (equivalence_failed) result.error = "cross-route equivalence violated; see report";
    report << "\nexit_code = " << result.exit_code << '\n';
    result.report = report.str();
    if (cfg.outputs.report) emit("report.txt", result.report);
  } catch (const IoError& e) {
    result.exit_code = kExitIo;
    result.error = e.what();
  } catch (const EquivalenceError& e) {
    result.exit_code = kExitEquivalence;
    result.error = e.what();
  } catch (const NumericError& e) {
    result.exit_code = kExitNumeric;
    result.error = e.what();
  } catch (const ArgumentError& e) {
    result.exit_code = kExitInvalidInput;
    result.error = e.what();
  }
  if (result.exit_code != kExitOk && result.report.empty()) result.report = report.str();
  return result;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ArgumentError("slope fit needs two or more matching points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ArgumentError("log-log fit needs positive values");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw ArgumentError("log-log fit needs distinct x values");
  return sxy / sxx;
}

ScalingResult scaling_study(const ScalingOptions& options) {
  if (options.alphas.size() < 2) throw ArgumentError("scaling study needs two or more couplings");
  if (options.output_intervals < 1 || options.generator_intervals < 1)
    throw ArgumentError("scaling study needs positive interval counts");
  const Preset preset = *find_preset("spinboson-single-mode");
  const auto grid = uniform_grid(options.t_max, options.output_intervals);

  ScalingResult result;
  result.alphas = options.alphas;
  result.orders = options.orders;
  result.errors.assign(options.orders.size(), std::vector<double>(options.alphas.size(), 0.0));

  // Stage times of an rk4 step of twice the node spacing fall on nodes.
  PropagationOptions prop;
  prop.stepper = Stepper::Rk4Fixed;
  prop.step = 2.0 * options.t_max / options.generator_intervals;

  std::vector<Generator> generators;
  for (int order : options.orders) {
    generators.push_back(build_generator(preset.model, preset.bath, order, options.quad,
                                         GeneratorGrid{options.t_max, options.generator_intervals, options.threads}));
    for (const auto& w : generators.back().warnings()) result.warnings.push_back(w);
  }

  std::vector<std::vector<std::string>> oracle_warnings(options.alphas.size());
  parallel_for(options.alphas.size(), options.threads, [&](std::size_t a) {
    const SystemModel model = preset.model.with_alpha(options.alphas[a]);
    const Trajectory exact =
        exact_small_bath(preset.rho0, model, TruncatedBathConfig{options.fock_levels, preset.bath, true}, grid);
    oracle_warnings[a] = exact.warnings;
    for (std::size_t o = 0; o < generators.size(); ++o) {
      const Trajectory traj = propagate(preset.rho0, generators[o].with_alpha(options.alphas[a]), grid, prop);
      double err = 0.0;
      for (std::size_t k = 0; k < grid.size(); ++k)
        err = std::max(err, trace_distance(exact.states[k], traj.states[k]));
      result.errors[o][a] = err;
    }
  });
  for (std::size_t a = 0; a < options.alphas.size(); ++a)
    for (const auto& w : oracle_warnings[a]) result.warnings.push_back("alpha=" + shortest(options.alphas[a]) + ": " + w);
  for (const auto& errs : result.errors) result.slopes.push_back(log_log_slope(options.alphas, errs));
  return result;
}

std::string ScalingResult::to_csv(const std::string& comment) const {
  std::string out = comment + "alpha";
  for (int order : orders) out += ",max_trace_distance_order" + std::to_string(order);
  out += '\n';
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    out += format_number(alphas[a]);
    for (const auto& errs : errors) out += ',' + format_number(errs[a]);
    out += '\n';
  }
  return out;
}

std::string ScalingResult::summary() const {
  std::ostringstream os;
  for (std::size_t o = 0; o < orders.size(); ++o) {
    os << "order " << orders[o] << ":";
    for (std::size_t a = 0; a < alphas.size(); ++a)
      os << " alpha=" << shortest(alphas[a]) << " err=" << format_number(errors[o][a]);
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, slopes[o], std::chars_format::fixed, 3);
    os << "\n  slope = " << std::string(buf, res.ptr) << '\n';
  }
  for (const auto& w : warnings) os << "warning: " << w << '\n';
  return os.str();
}

}  // namespace tclgen
