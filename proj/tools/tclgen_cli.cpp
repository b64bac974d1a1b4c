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

// tclgen command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tclgen/tclgen.h"

namespace {

struct Common {
  std::string config;
  std::string out;
  int order = 0;
  int quad_nodes = 0;
  bool verbose = false;
};

int fail(tclgen_status status) {
  std::cerr << "tclgen: " << tclgen_last_error() << '\n';
  return static_cast<int>(status);
}

std::string take(char* text) {
  std::string s = text ? text : "";
  tclgen_string_free(text);
  return s;
}

int run_with(const Common& common, tclgen_run_options options, bool print_report) {
  tclgen_config* cfg = nullptr;
  if (const auto st = tclgen_config_load(common.config.c_str(), &cfg); st != TCLGEN_OK) return fail(st);
  options.out_dir = common.out.empty() ? nullptr : common.out.c_str();
  options.order = common.order;
  options.quad_nodes = common.quad_nodes;
  options.verbose = common.verbose ? 1 : 0;
  char* report = nullptr;
  const tclgen_status st = tclgen_run_scenario(cfg, &options, &report);
  tclgen_config_destroy(cfg);
  const std::string text = take(report);
  if (print_report || common.verbose) std::cout << text;
  if (st != TCLGEN_OK) return fail(st);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-local master-equation generators for a system coupled to a harmonic bath"};
  app.set_version_flag("--version", std::string(tclgen_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--out", common.out, "Output directory (overrides TCLGEN_OUT_DIR and the config)");
  app.add_flag("--verbose", common.verbose, "Progress messages on stderr");

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "Scenario config file")->required();
  };
  auto add_numerics = [&](CLI::App* sub) {
    sub->add_option("--order", common.order, "Generator order")->check(CLI::IsMember({2, 4}));
    sub->add_option("--quad-nodes", common.quad_nodes, "Quadrature nodes per unit time")
        ->check(CLI::Range(4, 4096));
  };

  auto* kernels = app.add_subcommand("kernels", "Tabulate D, D1 and C on [0, t_max] into kernels.csv");
  add_config(kernels);

  bool print_table = false;
  auto* dump = app.add_subcommand("generator-dump", "Write generator_t*.csv and cross-route residuals");
  add_config(dump);
  add_numerics(dump);
  dump->add_flag("--print-table", print_table, "Print the fourth-order influence display");

  int cumulant_n = 4;
  bool cumulant_all = false;
  auto* terms = app.add_subcommand("cumulant-terms", "List the ordered-cumulant terms of order n");
  terms->add_option("n", cumulant_n, "Order")->required()->check(CLI::Range(1, 12));
  terms->add_flag("--all", cumulant_all, "Keep terms with odd substrings");

  auto* run = app.add_subcommand("run", "Run a scenario and write every selected artifact");
  add_config(run);
  add_numerics(run);

  int fock_levels = 0;
  unsigned threads = 0;
  auto* scaling = app.add_subcommand("scaling-study", "Error-vs-coupling slopes against the truncated oracle");
  scaling->add_option("--fock-levels", fock_levels, "Fock levels of the oracle bath")->check(CLI::Range(2, 64));
  scaling->add_option("--order", common.order, "Only this order")->check(CLI::IsMember({2, 4}));
  scaling->add_option("--quad-nodes", common.quad_nodes, "Quadrature nodes per unit time")
      ->check(CLI::Range(4, 4096));
  scaling->add_option("--threads", threads, "Worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(TCLGEN_ERR_ARGUMENT);
  }

  if (*kernels) {
    tclgen_run_options opt;
    tclgen_run_options_default(&opt);
    opt.kernels = 1;
    opt.generator = opt.trajectory = opt.diagnostic = opt.report = 0;
    return run_with(common, opt, false);
  }
  if (*dump) {
    if (print_table) {
      char* table = nullptr;
      if (const auto st = tclgen_k4_table(&table); st != TCLGEN_OK) return fail(st);
      std::cout << take(table);
    }
    tclgen_run_options opt;
    tclgen_run_options_default(&opt);
    opt.generator = 1;
    opt.kernels = opt.trajectory = opt.diagnostic = opt.report = 0;
    return run_with(common, opt, true);
  }
  if (*terms) {
    char* text = nullptr;
    if (const auto st = tclgen_cumulant_terms(cumulant_n, cumulant_all ? 1 : 0, &text); st != TCLGEN_OK)
      return fail(st);
    std::cout << take(text);
    return 0;
  }
  if (*run) {
    tclgen_run_options opt;
    tclgen_run_options_default(&opt);
    return run_with(common, opt, false);
  }
  if (*scaling) {
    tclgen_scaling_options opt;
    tclgen_scaling_options_default(&opt);
    if (fock_levels > 0) opt.fock_levels = fock_levels;
    if (common.order == 2) opt.orders_mask = 1;
    if (common.order == 4) opt.orders_mask = 2;
    if (common.quad_nodes > 0) opt.quad_nodes = common.quad_nodes;
    opt.threads = threads;
    opt.out_dir = common.out.empty() ? nullptr : common.out.c_str();
    double slopes[2] = {0.0, 0.0};
    char* summary = nullptr;
    if (const auto st = tclgen_scaling_study(&opt, slopes, &summary); st != TCLGEN_OK) return fail(st);
    std::cout << take(summary);
    return 0;
  }
  return 0;
}
