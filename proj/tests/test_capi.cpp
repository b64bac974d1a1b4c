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


// Exercises the shared library through its C header only.

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "tclgen/tclgen.h"

namespace {

struct BathHandle {
  tclgen_bath* p = nullptr;
  ~BathHandle() { tclgen_bath_destroy(p); }
};
struct ModelHandle {
  tclgen_model* p = nullptr;
  ~ModelHandle() { tclgen_model_destroy(p); }
};

// Row-major interleaved 2x2 matrices.
const double kSz[8] = {1, 0, 0, 0, 0, 0, -1, 0};
const double kHalfSz[8] = {0.5, 0, 0, 0, 0, 0, -0.5, 0};
const double kSx[8] = {0, 0, 1, 0, 1, 0, 0, 0};

void make_unit_bath(BathHandle& bath) {
  const double k = 1.0, w = 1.0, m = 1.0;
  REQUIRE(tclgen_bath_create(&k, &w, &m, 1, 1.0, 0, &bath.p) == TCLGEN_OK);
}

}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::string(tclgen_version()) == "0.1.0");
  BathHandle bath;
  const double k = 1.0, w = -1.0, m = 1.0;
  CHECK(tclgen_bath_create(&k, &w, &m, 1, 1.0, 0, &bath.p) == TCLGEN_ERR_ARGUMENT);
  CHECK(bath.p == nullptr);
  CHECK(std::strstr(tclgen_last_error(), "omega") != nullptr);
  CHECK(tclgen_bath_create(&k, &w, &m, 1, 1.0, 0, nullptr) == TCLGEN_ERR_ARGUMENT);
  const double bad_h[8] = {1, 0, 1, 0, 0, 0, -1, 0};
  ModelHandle model;
  CHECK(tclgen_model_create(2, bad_h, kSx, 0.1, &model.p) == TCLGEN_ERR_ARGUMENT);
}

TEST_CASE("kernels") {
  BathHandle bath;
  make_unit_bath(bath);
  double d = 0.0, d1 = 0.0, re = 0.0, im = 0.0;
  REQUIRE(tclgen_kernel_D(bath.p, M_PI / 2, &d) == TCLGEN_OK);
  REQUIRE(tclgen_kernel_D1(bath.p, 0.0, &d1) == TCLGEN_OK);
  REQUIRE(tclgen_bath_correlation(bath.p, M_PI / 2, &re, &im) == TCLGEN_OK);
  CHECK(d == doctest::Approx(1.0));
  CHECK(d1 == doctest::Approx(1.0 / std::tanh(0.5)));
  CHECK(std::abs(re) < 1e-15);
  CHECK(im == doctest::Approx(-0.5));
  BathHandle cold;
  const double k = 1.0, w = 1.0, m = 1.0;
  REQUIRE(tclgen_bath_create(&k, &w, &m, 1, 0.0, 1, &cold.p) == TCLGEN_OK);
  REQUIRE(tclgen_kernel_D1(cold.p, 0.0, &d1) == TCLGEN_OK);
  CHECK(d1 == 1.0);
}

TEST_CASE("generators and propagation") {
  BathHandle bath;
  make_unit_bath(bath);
  ModelHandle model;
  REQUIRE(tclgen_model_create(2, kHalfSz, kSx, 0.2, &model.p) == TCLGEN_OK);
  CHECK(tclgen_model_dim(model.p) == 2);

  std::vector<double> a(32), b(32);
  REQUIRE(tclgen_K2(model.p, bath.p, 1.0, nullptr, TCLGEN_ROUTE_INFLUENCE, a.data()) == TCLGEN_OK);
  REQUIRE(tclgen_K2(model.p, bath.p, 1.0, nullptr, TCLGEN_ROUTE_CUMULANT, b.data()) == TCLGEN_OK);
  double diff = 0.0, norm = 0.0;
  for (int k = 0; k < 32; ++k) {
    diff += (a[k] - b[k]) * (a[k] - b[k]);
    norm += a[k] * a[k];
  }
  CHECK(std::sqrt(diff / norm) < 1e-12);
  REQUIRE(tclgen_K4(model.p, bath.p, 0.5, nullptr, TCLGEN_ROUTE_INFLUENCE, a.data()) == TCLGEN_OK);
  REQUIRE(tclgen_K4(model.p, bath.p, 0.5, nullptr, TCLGEN_ROUTE_CUMULANT, b.data()) == TCLGEN_OK);
  diff = norm = 0.0;
  for (int k = 0; k < 32; ++k) {
    diff += (a[k] - b[k]) * (a[k] - b[k]);
    norm += a[k] * a[k];
  }
  CHECK(std::sqrt(diff / norm) < 1e-8);

  tclgen_quad quad;
  tclgen_quad_default(&quad);
  CHECK(quad.scheme == TCLGEN_QUAD_GAUSS_LEGENDRE_NESTED);
  tclgen_generator* gen = nullptr;
  REQUIRE(tclgen_generator_build(model.p, bath.p, 4, &quad, 2.0, 40, 1, &gen) == TCLGEN_OK);
  REQUIRE(tclgen_generator_eval(gen, 1.0, a.data()) == TCLGEN_OK);
  CHECK(tclgen_generator_eval(gen, 3.0, a.data()) == TCLGEN_ERR_ARGUMENT);

  const double rho0[8] = {0.5, 0, 0.5, 0, 0.5, 0, 0.5, 0};
  const double grid[] = {0.0, 0.5, 1.0, 1.5, 2.0};
  tclgen_trajectory* traj = nullptr;
  REQUIRE(tclgen_propagate(gen, rho0, grid, 5, TCLGEN_STEPPER_RK45_ADAPTIVE, 0.01, 1e-10, &traj) == TCLGEN_OK);
  CHECK(tclgen_trajectory_size(traj) == 5);
  CHECK(tclgen_trajectory_dim(traj) == 2);
  double t = -1.0, rho[8], monitors[3];
  REQUIRE(tclgen_trajectory_state(traj, 4, &t, rho, monitors) == TCLGEN_OK);
  CHECK(t == 2.0);
  CHECK(std::abs(rho[0] + rho[6] - 1.0) < 1e-9);
  CHECK(monitors[0] < 1e-9);
  CHECK(tclgen_trajectory_state(traj, 5, &t, rho, monitors) == TCLGEN_ERR_ARGUMENT);
  tclgen_trajectory_destroy(traj);

  const double bad_rho[8] = {1, 0, 0, 0, 0, 0, 1, 0};
  CHECK(tclgen_propagate(gen, bad_rho, grid, 5, TCLGEN_STEPPER_RK4_FIXED, 0.01, 1e-10, &traj) == TCLGEN_ERR_ARGUMENT);
  tclgen_generator_destroy(gen);

  double sigma[3], cond[3];
  const double times[] = {0.0, 1.0, 2.0};
  REQUIRE(tclgen_invertibility(model.p, bath.p, times, 3, nullptr, sigma, cond) == TCLGEN_OK);
  CHECK(sigma[0] == 1.0);
  CHECK(cond[0] == 1.0);
}

TEST_CASE("symbolic listings") {
  char* text = nullptr;
  REQUIRE(tclgen_cumulant_terms(4, 0, &text) == TCLGEN_OK);
  CHECK(std::string(text) == "+ 4 t,t1,t2,t3\n- 2+2 t,t1|t2,t3\n- 2+2 t,t2|t1,t3\n- 2+2 t,t3|t1,t2\n");
  tclgen_string_free(text);
  CHECK(tclgen_cumulant_terms(0, 0, &text) == TCLGEN_ERR_ARGUMENT);
  REQUIRE(tclgen_k4_table(&text) == TCLGEN_OK);
  CHECK(std::strlen(text) > 0);
  tclgen_string_free(text);
}

TEST_CASE("config and scenario") {
  tclgen_config* cfg = nullptr;
  CHECK(tclgen_config_parse("[model]\npreset = nope\n", &cfg) == TCLGEN_ERR_ARGUMENT);
  CHECK(std::strstr(tclgen_last_error(), "dephasing-single-mode") != nullptr);
  CHECK(tclgen_config_load("/nonexistent.ini", &cfg) == TCLGEN_ERR_IO);
  REQUIRE(tclgen_config_parse("[model]\npreset = dephasing-single-mode\n[run]\nt_max = 1\npoints = 5\n"
                              "generator_times = 1\nalpha_scan = 1\n",
                              &cfg) == TCLGEN_OK);
  const auto dir = std::filesystem::temp_directory_path() / "tclgen_capi_run";
  std::filesystem::remove_all(dir);
  const std::string dir_s = dir.string();
  tclgen_run_options opts;
  tclgen_run_options_default(&opts);
  opts.out_dir = dir_s.c_str();
  opts.kernels = 0;
  char* report = nullptr;
  CHECK(tclgen_run_scenario(cfg, &opts, &report) == TCLGEN_OK);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("exit_code = 0") != std::string::npos);
  tclgen_string_free(report);
  CHECK(std::filesystem::exists(dir / "trajectory.csv"));
  CHECK(!std::filesystem::exists(dir / "kernels.csv"));
  tclgen_config_destroy(cfg);
}
