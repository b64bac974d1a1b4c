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


#include <algorithm>

#include "doctest.h"
#include "tclgen/config.hpp"
#include "tclgen/models.hpp"

using namespace tclgen;

namespace {

std::vector<ConfigDiagnostic> diagnostics_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.diagnostics();
  }
  return {};
}

bool mentions(const std::vector<ConfigDiagnostic>& diags, const std::string& field) {
  return std::any_of(diags.begin(), diags.end(), [&](const auto& d) { return d.field == field; });
}

}  // namespace

TEST_CASE("preset config") {
  const ScenarioConfig cfg = parse_config("[model]\npreset = spinboson-single-mode\n");
  CHECK(cfg.preset == "spinboson-single-mode");
  CHECK(cfg.alpha == 0.1);
  CHECK(cfg.modes.size() == 1);
  CHECK(!cfg.beta.is_infinite());
  CHECK(cfg.order == 2);
  CHECK(cfg.quad.scheme == QuadratureScheme::GaussLegendreNested);
  CHECK(cfg.rho0.rows() == 2);
  CHECK(cfg.source_hash.size() == 16);
  CHECK(!cfg.outputs.dir_set);
}

TEST_CASE("explicit model with overrides") {
  const char* text = R"(# qutrit
[model]
dim = 3
H_S = 1, 0, 0,  0, 0, 0,  0, 0, -1
X   = 0, 1, 0,  1, 0, 1i, 0, -1i, 0
alpha = 0.25
[bath]
modes = 1, 1, 1; 0.5, 2, 1.5
beta = inf
[run]
t_max = 2
points = 11
order = 4
stepper = rk4
step = 0.005
quadrature = simpson-uniform
quad_nodes = 16
generator_times = 0.5, 2
alpha_scan = 0.5, 1
fock_levels = 6
threads = 2
[outputs]
dir = somewhere
kernels = no
report = 1
)";
  const ScenarioConfig cfg = parse_config(text);
  CHECK(cfg.hamiltonian.rows() == 3);
  CHECK(cfg.coupling(1, 2) == Complex(0, 1));
  CHECK(cfg.coupling(2, 1) == Complex(0, -1));
  CHECK(cfg.modes.size() == 2);
  CHECK(cfg.modes[1].mass == 1.5);
  CHECK(cfg.beta.is_infinite());
  CHECK(cfg.order == 4);
  CHECK(cfg.propagation.stepper == Stepper::Rk4Fixed);
  CHECK(cfg.quad.scheme == QuadratureScheme::SimpsonUniform);
  CHECK(cfg.quad.nodes_per_unit_time == 16);
  CHECK(cfg.generator_times == std::vector<double>{0.5, 2.0});
  CHECK(cfg.alpha_scan == std::vector<double>{0.5, 1.0});
  CHECK(cfg.fock_levels == 6);
  CHECK(cfg.threads == 2);
  CHECK(cfg.outputs.dir == "somewhere");
  CHECK(cfg.outputs.dir_set);
  CHECK(!cfg.outputs.kernels);
  CHECK(cfg.outputs.report);
  CHECK((cfg.rho0 - uniform_superposition(3)).norm() == 0.0);
}

TEST_CASE("bad values name their field") {
  const auto diags = diagnostics_of("[model]\npreset = spinboson-single-mode\n[bath]\nbeta = -1\n");
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].field == "bath.beta");
  CHECK(diags[0].line == 4);
  CHECK(diags[0].column == 8);
  try {
    parse_config("[model]\npreset = spinboson-single-mode\n[bath]\nbeta = -1\n");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("bath.beta") != std::string::npos);
  }
}

TEST_CASE("unknown preset lists the available ones") {
  const auto diags = diagnostics_of("[model]\npreset = spin-bosun\n");
  REQUIRE(!diags.empty());
  CHECK(diags[0].field == "model.preset");
  for (const auto& name : preset_names()) CHECK(diags[0].message.find(name) != std::string::npos);
}

TEST_CASE("syntax errors carry line and column") {
  const auto diags = diagnostics_of("[model]\npreset = dephasing-single-mode\n  oops\n[run\n");
  REQUIRE(diags.size() == 2);
  CHECK(diags[0].line == 3);
  CHECK(diags[0].column == 3);
  CHECK(diags[0].message.find("syntax error") != std::string::npos);
  CHECK(diags[1].line == 4);
  CHECK(diags[1].column == 1);
}

TEST_CASE("every problem is reported at once") {
  const auto diags = diagnostics_of(R"([model]
preset = dephasing-single-mode
colour = blue
[run]
t_max = -3
points = 1.5
order = 3
stepper = euler
quad_nodes = 2
[outputs]
kernels = maybe
[extras]
x = 1
)");
  CHECK(diags.size() == 8);
  for (const char* f : {"model.colour", "run.t_max", "run.points", "run.order", "run.stepper", "run.quad_nodes",
                        "outputs.kernels", "extras"})
    CHECK(mentions(diags, f));
}

TEST_CASE("model consistency checks") {
  CHECK(mentions(diagnostics_of("[model]\nH_S = 1, 0, 0, -1\n"), "model.X"));
  CHECK(mentions(diagnostics_of("[model]\nH_S = 1, 0, 0, -1\nX = 0, 1, 1, 0\nalpha = 1\n"), "bath.modes"));
  const auto rho = diagnostics_of("[model]\npreset = dephasing-single-mode\nrho0 = 1, 0, 0, 1\n");
  CHECK(mentions(rho, "model.rho0"));
  const auto herm = diagnostics_of(
      "[model]\nH_S = 1, 1, 0, -1\nX = 0, 1, 1, 0\nalpha = 1\n[bath]\nmodes = 1,1,1\nbeta = 1\n");
  CHECK(!herm.empty());
  CHECK(mentions(diagnostics_of("[model]\npreset = dephasing-single-mode\n[bath]\nmodes = 1, 0, 1\n"), "bath.modes"));
  CHECK(mentions(diagnostics_of("[model]\npreset = dephasing-single-mode\n[run]\nt_max = 1\ngenerator_times = 2\n"),
                 "run.generator_times"));
  CHECK(mentions(diagnostics_of("[model]\npreset = dephasing-single-mode\n[model]\nalpha = 1\nalpha = 2\n"),
                 "model.alpha"));
}

TEST_CASE("complex number syntax") {
  CHECK(parse_complex("1") == Complex(1, 0));
  CHECK(parse_complex("-2.5e-3") == Complex(-2.5e-3, 0));
  CHECK(parse_complex("i") == Complex(0, 1));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("3i") == Complex(0, 3));
  CHECK(parse_complex("1+2i") == Complex(1, 2));
  CHECK(parse_complex("0.5 - 1e-2i") == Complex(0.5, -1e-2));
  CHECK(parse_complex("1e-3+1e+2j") == Complex(1e-3, 1e2));
  CHECK(!parse_complex(""));
  CHECK(!parse_complex("abc"));
  CHECK(!parse_complex("1+xi"));
}

TEST_CASE("load_config") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.ini"), IoError);
  CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
  CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
}
