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

#include "tclgen/tclgen.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "tclgen/config.hpp"
#include "tclgen/cumulant.hpp"
#include "tclgen/evolve.hpp"
#include "tclgen/scenario.hpp"
#include "tclgen/tcl.hpp"

struct tclgen_bath {
  tclgen::BathSpec spec;
};

struct tclgen_model {
  tclgen::SystemModel model;
};

struct tclgen_generator {
  tclgen::Generator gen;
};

struct tclgen_trajectory {
  tclgen::Trajectory traj;
};

struct tclgen_config {
  tclgen::ScenarioConfig config;
};

namespace {

thread_local std::string g_last_error;

template <class Fn>
tclgen_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const tclgen::IoError& e) {
    g_last_error = e.what();
    return TCLGEN_ERR_IO;
  } catch (const tclgen::EquivalenceError& e) {
    g_last_error = e.what();
    return TCLGEN_ERR_EQUIVALENCE;
  } catch (const tclgen::NumericError& e) {
    g_last_error = e.what();
    return TCLGEN_ERR_NUMERIC;
  } catch (const tclgen::ArgumentError& e) {
    g_last_error = e.what();
    return TCLGEN_ERR_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TCLGEN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TCLGEN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TCLGEN_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw tclgen::ArgumentError(std::string(what) + " must not be NULL");
}

tclgen::Matrix read_matrix(const double* data, int n) {
  tclgen::Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const std::size_t k = 2 * (static_cast<std::size_t>(r) * n + c);
      m(r, c) = tclgen::Complex(data[k], data[k + 1]);
    }
  return m;
}

void write_matrix(const tclgen::Matrix& m, double* out) {
  const auto n = m.rows();
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const std::size_t k = 2 * (static_cast<std::size_t>(r) * m.cols() + c);
      out[k] = m(r, c).real();
      out[k + 1] = m(r, c).imag();
    }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tclgen::QuadratureSpec to_spec(const tclgen_quad* quad) {
  tclgen::QuadratureSpec spec;
  if (!quad) return spec;
  switch (quad->scheme) {
    case TCLGEN_QUAD_SIMPSON_UNIFORM:
      spec.scheme = tclgen::QuadratureScheme::SimpsonUniform;
      break;
    case TCLGEN_QUAD_GAUSS_LEGENDRE_NESTED:
      spec.scheme = tclgen::QuadratureScheme::GaussLegendreNested;
      break;
    default:
      throw tclgen::ArgumentError("unknown quadrature scheme");
  }
  spec.nodes_per_unit_time = quad->nodes_per_unit_time;
  spec.tolerance = quad->tolerance;
  spec.validate();
  return spec;
}

std::optional<bool> toggle(int v) {
  if (v < 0) return std::nullopt;
  return v != 0;
}

}  // namespace

extern "C" {

const char* tclgen_version(void) { return TCLGEN_VERSION_STRING; }

const char* tclgen_last_error(void) { return g_last_error.c_str(); }

void tclgen_string_free(char* text) { std::free(text); }

void tclgen_quad_default(tclgen_quad* quad) {
  if (!quad) return;
  const tclgen::QuadratureSpec spec;
  quad->scheme = spec.scheme == tclgen::QuadratureScheme::SimpsonUniform ? TCLGEN_QUAD_SIMPSON_UNIFORM
                                                                         : TCLGEN_QUAD_GAUSS_LEGENDRE_NESTED;
  quad->nodes_per_unit_time = spec.nodes_per_unit_time;
  quad->tolerance = spec.tolerance;
}

tclgen_status tclgen_bath_create(const double* kappa, const double* omega, const double* mass, size_t n_modes,
                                 double beta, int zero_temperature, tclgen_bath** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    if (n_modes == 0) throw tclgen::ArgumentError("bath needs at least one mode");
    require(kappa, "kappa");
    require(omega, "omega");
    require(mass, "mass");
    std::vector<tclgen::Mode> modes;
    for (size_t i = 0; i < n_modes; ++i) modes.push_back({kappa[i], omega[i], mass[i]});
    const auto temp = (zero_temperature || beta <= 0.0) ? tclgen::InverseTemperature::infinite()
                                                        : tclgen::InverseTemperature::finite(beta);
    *out = new tclgen_bath{tclgen::BathSpec(std::move(modes), temp)};
    return TCLGEN_OK;
  });
}

void tclgen_bath_destroy(tclgen_bath* bath) { delete bath; }

tclgen_status tclgen_kernel_D(const tclgen_bath* bath, double tau, double* out) {
  return guarded([&] {
    require(bath, "bath");
    require(out, "out");
    *out = tclgen::kernel_D(bath->spec, tau);
    return TCLGEN_OK;
  });
}

tclgen_status tclgen_kernel_D1(const tclgen_bath* bath, double tau, double* out) {
  return guarded([&] {
    require(bath, "bath");
    require(out, "out");
    *out = tclgen::kernel_D1(bath->spec, tau);
    return TCLGEN_OK;
  });
}

tclgen_status tclgen_bath_correlation(const tclgen_bath* bath, double tau, double* re, double* im) {
  return guarded([&] {
    require(bath, "bath");
    require(re, "re");
    require(im, "im");
    const tclgen::Complex c = tclgen::bath_correlation(bath->spec, tau);
    *re = c.real();
    *im = c.imag();
    return TCLGEN_OK;
  });
}

tclgen_status tclgen_model_create(int dim, const double* h, const double* x, double alpha, tclgen_model** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(h, "h");
    require(x, "x");
    if (dim < 2) throw tclgen::ArgumentError("dimension must be >= 2");
    *out = new tclgen_model{tclgen::SystemModel(read_matrix(h, dim), read_matrix(x, dim), alpha)};
    return TCLGEN_OK;
  });
}

void tclgen_model_destroy(tclgen_model* model) { delete model; }

int tclgen_model_dim(const tclgen_model* model) { return model ? model->model.dim() : 0; }

tclgen_status tclgen_K2(const tclgen_model* model, const tclgen_bath* bath, double t, const tclgen_quad* quad,
                        tclgen_route route, double* out) {
  return guarded([&] {
    require(model, "model");
    require(bath, "bath");
    require(out, "out");
    const auto spec = to_spec(quad);
    const tclgen::SuperOp k = route == TCLGEN_ROUTE_CUMULANT
                                  ? tclgen::K_n_cumulant(model->model, bath->spec, t, 2, spec)
                                  : tclgen::K2_influence(model->model, bath->spec, t, spec);
    write_matrix(k.matrix(), out);
    return TCLGEN_OK;
  });
}

tclgen_status tclgen_K4(const tclgen_model* model, const tclgen_bath* bath, double t, const tclgen_quad* quad,
                        tclgen_route route, double* out) {
  return guarded([&] {
    require(model, "model");
    require(bath, "bath");
    require(out, "out");
    const auto spec = to_spec(quad);
    const tclgen::SuperOp k = route == TCLGEN_ROUTE_CUMULANT
                                  ? tclgen::K4_cumulant_ordered(model->model, bath->spec, t, spec)
                                  : tclgen::K4_influence(model->model, bath->spec, t, spec);
    write_matrix(k.matrix(), out);
    return TCLGEN_OK;
  });
}

tclgen_status tclgen_generator_build(const tclgen_model* model, const tclgen_bath* bath, int order,
                                     const tclgen_quad* quad, double t_max, int intervals, unsigned threads,
                                     tclgen_generator** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(model, "model");
    require(bath, "bath");
    *out = new tclgen_generator{tclgen::build_generator(model->model, bath->spec, order, to_spec(quad),
                                                        tclgen::GeneratorGrid{t_max, intervals, threads})};
    return TCLGEN_OK;
  });
}

void tclgen_generator_destroy(tclgen_generator* gen) { delete gen; }

tclgen_status tclgen_generator_eval(const tclgen_generator* gen, double t, double* out) {
  return guarded([&] {
    require(gen, "generator");
    require(out, "out");
    tclgen::Matrix m;
    gen->gen.evaluate_into(t, m);
    write_matrix(m, out);
    return TCLGEN_OK;
  });
}

tclgen_status tclgen_propagate(const tclgen_generator* gen, const double* rho0, const double* t_grid, size_t n_times,
                               tclgen_stepper stepper, double step, double abs_tol, tclgen_trajectory** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(gen, "generator");
    require(rho0, "rho0");
    require(t_grid, "t_grid");
    tclgen::PropagationOptions options;
    options.stepper =
        stepper == TCLGEN_STEPPER_RK4_FIXED ? tclgen::Stepper::Rk4Fixed : tclgen::Stepper::Rk45Adaptive;
    if (step > 0.0) options.step = step;
    if (abs_tol > 0.0) options.abs_tol = abs_tol;
    const tclgen::Matrix rho = read_matrix(rho0, gen->gen.dim());
    *out = new tclgen_trajectory{
        tclgen::propagate(rho, gen->gen, std::span<const double>(t_grid, n_times), options)};
    return TCLGEN_OK;
  });
}

void tclgen_trajectory_destroy(tclgen_trajectory* traj) { delete traj; }

size_t tclgen_trajectory_size(const tclgen_trajectory* traj) { return traj ? traj->traj.times.size() : 0; }

int tclgen_trajectory_dim(const tclgen_trajectory* traj) {
  return traj && !traj->traj.states.empty() ? static_cast<int>(traj->traj.states.front().rows()) : 0;
}

tclgen_status tclgen_trajectory_state(const tclgen_trajectory* traj, size_t index, double* time, double* out,
                                      double* monitors) {
  return guarded([&] {
    require(traj, "trajectory");
    const auto& t = traj->traj;
    if (index >= t.times.size()) throw tclgen::ArgumentError("trajectory index out of range");
    if (time) *time = t.times[index];
    if (out) write_matrix(t.states[index], out);
    if (monitors) {
      monitors[0] = t.trace_deviation[index];
      monitors[1] = t.herm_deviation[index];
      monitors[2] = t.min_eigenvalue[index];
    }
    return TCLGEN_OK;
  });
}

tclgen_status tclgen_invertibility(const tclgen_model* model, const tclgen_bath* bath, const double* t_grid,
                                   size_t n_times, const tclgen_quad* quad, double* sigma_min,
                                   double* condition_number) {
  return guarded([&] {
    require(model, "model");
    require(bath, "bath");
    require(t_grid, "t_grid");
    const auto records = tclgen::invertibility_diagnostic(model->model, bath->spec,
                                                          std::span<const double>(t_grid, n_times), to_spec(quad));
    for (size_t k = 0; k < records.size(); ++k) {
      if (sigma_min) sigma_min[k] = records[k].sigma_min;
      if (condition_number) condition_number[k] = records[k].condition_number;
    }
    return TCLGEN_OK;
  });
}

tclgen_status tclgen_cumulant_terms(int n, int all, char** text) {
  return guarded([&] {
    require(text, "text");
    *text = nullptr;
    auto terms = tclgen::enumerate_ordered_cumulant_terms(n);
    if (!all) terms = tclgen::drop_odd_terms(std::move(terms));
    std::string out;
    for (const auto& term : terms) out += term.to_string() + '\n';
    *text = copy_string(out);
    return TCLGEN_OK;
  });
}

tclgen_status tclgen_k4_table(char** text) {
  return guarded([&] {
    require(text, "text");
    *text = copy_string(tclgen::format_k4_table());
    return TCLGEN_OK;
  });
}

tclgen_status tclgen_config_load(const char* path, tclgen_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(path, "path");
    *out = new tclgen_config{tclgen::load_config(path)};
    return TCLGEN_OK;
  });
}

tclgen_status tclgen_config_parse(const char* text, tclgen_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(text, "text");
    *out = new tclgen_config{tclgen::parse_config(text)};
    return TCLGEN_OK;
  });
}

void tclgen_config_destroy(tclgen_config* config) { delete config; }

void tclgen_run_options_default(tclgen_run_options* options) {
  if (!options) return;
  *options = tclgen_run_options{nullptr, 0, 0, 0, -1, -1, -1, -1, -1};
}

tclgen_status tclgen_run_scenario(const tclgen_config* config, const tclgen_run_options* options, char** report) {
  return guarded([&] {
    if (report) *report = nullptr;
    require(config, "config");
    tclgen_run_options defaults;
    tclgen_run_options_default(&defaults);
    const tclgen_run_options& opt = options ? *options : defaults;

    tclgen::ScenarioConfig cfg = config->config;
    auto apply = [](int v, bool& target) {
      if (const auto t = toggle(v)) target = *t;
    };
    apply(opt.kernels, cfg.outputs.kernels);
    apply(opt.generator, cfg.outputs.generator);
    apply(opt.trajectory, cfg.outputs.trajectory);
    apply(opt.diagnostic, cfg.outputs.diagnostic);
    apply(opt.report, cfg.outputs.report);

    tclgen::RunOptions run;
    if (opt.out_dir) run.out_dir = opt.out_dir;
    if (opt.order != 0) run.order = opt.order;
    if (opt.quad_nodes != 0) run.quad_nodes = opt.quad_nodes;
    run.verbose = opt.verbose != 0;

    const tclgen::ScenarioResult result = tclgen::run_scenario(cfg, run);
    if (report) *report = copy_string(result.report);
    g_last_error = result.error;
    return static_cast<tclgen_status>(result.exit_code);
  });
}

void tclgen_scaling_options_default(tclgen_scaling_options* options) {
  if (!options) return;
  const tclgen::ScalingOptions d;
  *options = tclgen_scaling_options{nullptr,
                                    0,
                                    d.t_max,
                                    d.fock_levels,
                                    d.output_intervals,
                                    d.generator_intervals,
                                    3,
                                    d.quad.nodes_per_unit_time,
                                    d.threads,
                                    nullptr};
}

tclgen_status tclgen_scaling_study(const tclgen_scaling_options* options, double* slopes, char** summary) {
  return guarded([&] {
    if (summary) *summary = nullptr;
    tclgen_scaling_options defaults;
    tclgen_scaling_options_default(&defaults);
    const tclgen_scaling_options& opt = options ? *options : defaults;

    tclgen::ScalingOptions so;
    if (opt.alphas) so.alphas.assign(opt.alphas, opt.alphas + opt.n_alphas);
    so.t_max = opt.t_max;
    so.fock_levels = opt.fock_levels;
    so.output_intervals = opt.output_intervals;
    so.generator_intervals = opt.generator_intervals;
    so.orders.clear();
    if (opt.orders_mask & 1) so.orders.push_back(2);
    if (opt.orders_mask & 2) so.orders.push_back(4);
    if (so.orders.empty()) throw tclgen::ArgumentError("no order selected");
    if (opt.quad_nodes > 0) so.quad.nodes_per_unit_time = opt.quad_nodes;
    so.threads = opt.threads;

    const tclgen::ScalingResult result = tclgen::scaling_study(so);
    if (slopes)
      for (std::size_t o = 0; o < result.slopes.size(); ++o) slopes[o] = result.slopes[o];

    std::string dir;
    if (opt.out_dir) {
      dir = opt.out_dir;
    } else if (const char* env = std::getenv(tclgen::kOutDirEnv); env && *env) {
      dir = env;
    } else {
      dir = ".";
    }
    std::string text = result.summary();
    if (!dir.empty()) {
      std::ostringstream canon;
      canon << "scaling-study t_max=" << so.t_max << " fock_levels=" << so.fock_levels
            << " output_intervals=" << so.output_intervals << " generator_intervals=" << so.generator_intervals
            << " quad_nodes=" << so.quad.nodes_per_unit_time << " alphas=";
      for (double a : so.alphas) canon << tclgen::format_number(a) << ';';
      const std::string comment = std::string("# tclgen ") + TCLGEN_VERSION_STRING +
                                  " config=" + tclgen::hex64(tclgen::fnv1a64(canon.str())) + '\n';
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      const auto path = std::filesystem::path(dir) / "scaling.csv";
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw tclgen::IoError("cannot write '" + path.string() + "'");
      out << result.to_csv(comment);
      if (!out) throw tclgen::IoError("write failed for '" + path.string() + "'");
      text += "wrote " + path.string() + '\n';
    }
    if (summary) *summary = copy_string(text);
    return TCLGEN_OK;
  });
}

}  // extern "C"
