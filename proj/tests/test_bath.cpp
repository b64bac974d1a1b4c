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


#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tclgen/bath.hpp"

using namespace tclgen;

namespace {

BathSpec unit_mode(InverseTemperature beta = InverseTemperature::finite(1.0)) {
  return BathSpec({{1.0, 1.0, 1.0}}, beta);
}

}  // namespace

TEST_CASE("kernel values for the unit mode") {
  const BathSpec bath = unit_mode();
  CHECK(kernel_D(bath, std::numbers::pi / 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(kernel_D(bath, 0.0) == 0.0);
  CHECK(kernel_D1(bath, 0.0) == doctest::Approx(1.0 / std::tanh(0.5)).epsilon(1e-15));
  CHECK(kernel_D1(unit_mode(InverseTemperature::infinite()), 0.0) == 1.0);
  const Complex c = bath_correlation(bath, std::numbers::pi / 2);
  CHECK(std::abs(c - Complex(0.0, -0.5)) < 1e-15);
}

TEST_CASE("kernels agree with a truncated Fock computation") {
  SUBCASE("single mode, beta = 1") {
    const BathSpec bath = unit_mode();
    const oracle::FockBath fock({{1.0, 1.0, 1.0}}, 1.0, 48);
    CHECK(fock.D(std::numbers::pi / 2) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fock.D1(0.0) == doctest::Approx(1.0 / std::tanh(0.5)).epsilon(1e-10));
    for (int k = 0; k <= 100; ++k) {
      const double tau = 0.1 * k;
      CHECK(std::abs(kernel_D(bath, tau) - fock.D(tau)) < 1e-8);
      CHECK(std::abs(kernel_D1(bath, tau) - fock.D1(tau)) < 1e-8);
      CHECK(std::abs(bath_correlation(bath, tau) - fock.correlation(tau, 0.0)) < 1e-8);
    }
  }
  SUBCASE("zero temperature") {
    const BathSpec bath = unit_mode(InverseTemperature::infinite());
    const oracle::FockBath fock({{1.0, 1.0, 1.0}}, 0.0, 6, true);
    CHECK(fock.D1(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 0; k <= 20; ++k) {
      const double tau = 0.5 * k;
      CHECK(std::abs(kernel_D1(bath, tau) - fock.D1(tau)) < 1e-12);
    }
  }
  SUBCASE("two modes with different mass and frequency") {
    const BathSpec bath({{0.7, 1.3, 0.8}, {0.4, 0.6, 1.5}}, InverseTemperature::finite(2.0));
    const oracle::FockBath fock({{0.7, 1.3, 0.8}, {0.4, 0.6, 1.5}}, 2.0, 20);
    for (int k = 0; k <= 10; ++k) {
      const double tau = 0.77 * k;
      CHECK(std::abs(kernel_D(bath, tau) - fock.D(tau)) < 1e-8);
      CHECK(std::abs(kernel_D1(bath, tau) - fock.D1(tau)) < 1e-8);
    }
  }
}

TEST_CASE("kernel symmetries at random lags") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> lag(-20.0, 20.0);
  const BathSpec bath({{0.3, 0.5, 1.0}, {1.1, 1.7, 0.4}, {0.2, 3.0, 2.0}}, InverseTemperature::finite(0.7));
  for (int k = 0; k < 100; ++k) {
    const double tau = lag(rng);
    CHECK(std::abs(kernel_D(bath, -tau) + kernel_D(bath, tau)) < 1e-12);
    CHECK(std::abs(kernel_D1(bath, -tau) - kernel_D1(bath, tau)) < 1e-12);
    CHECK(std::abs(bath_correlation(bath, -tau) - std::conj(bath_correlation(bath, tau))) < 1e-12);
    CHECK(std::abs(kernel_D(bath, tau)) <= bath.dissipation_bound() + 1e-12);
    CHECK(std::abs(kernel_D1(bath, tau)) <= bath.noise_bound() + 1e-12);
  }
}

TEST_CASE("noise kernel grows with temperature and D does not depend on it") {
  double previous = std::numeric_limits<double>::infinity();
  for (double beta : {0.1, 0.5, 1.0, 2.0, 8.0}) {
    const BathSpec bath = unit_mode(InverseTemperature::finite(beta));
    const double d1 = kernel_D1(bath, 0.0);
    CHECK(d1 < previous);
    CHECK(d1 >= 1.0);
    previous = d1;
    CHECK(kernel_D(bath, 0.8) == kernel_D(unit_mode(InverseTemperature::infinite()), 0.8));
  }
}

TEST_CASE("invalid baths are rejected") {
  CHECK_THROWS_AS(InverseTemperature::finite(-1.0), ArgumentError);
  CHECK_THROWS_AS(InverseTemperature::finite(0.0), ArgumentError);
  CHECK_THROWS_AS(BathSpec({}, InverseTemperature::infinite()), ArgumentError);
  CHECK_THROWS_AS(BathSpec({{1.0, 0.0, 1.0}}, InverseTemperature::infinite()), ArgumentError);
  CHECK_THROWS_AS(BathSpec({{1.0, 1.0, -1.0}}, InverseTemperature::infinite()), ArgumentError);
  CHECK_THROWS_AS(BathSpec({{NAN, 1.0, 1.0}}, InverseTemperature::infinite()), ArgumentError);
}

TEST_CASE("tabulate_kernels") {
  const BathSpec bath = unit_mode();
  const KernelTable table = tabulate_kernels(bath, 2.0, 5);
  REQUIRE(table.tau.size() == 5);
  CHECK(table.tau.front() == 0.0);
  CHECK(table.tau.back() == 2.0);
  CHECK(table.step() == doctest::Approx(0.5));
  for (std::size_t k = 0; k < table.tau.size(); ++k) {
    CHECK(table.D[k] == kernel_D(bath, table.tau[k]));
    CHECK(table.D1[k] == kernel_D1(bath, table.tau[k]));
  }
  CHECK_THROWS_AS(tabulate_kernels(bath, 0.0, 5), ArgumentError);
  CHECK_THROWS_AS(tabulate_kernels(bath, 1.0, 1), ArgumentError);
}

TEST_CASE("spectral density discretization") {
  // Ohmic with exponential cutoff; D(tau) = (2/pi) int J sin(omega tau).
  const auto J = [](double w) { return w * std::exp(-w); };
  const BathSpec bath = discretize_spectral_density(J, 20.0, 4000, InverseTemperature::infinite());
  CHECK(bath.modes().size() == 4000);
  for (const Mode& m : bath.modes()) {
    CHECK(m.omega > 0.0);
    CHECK(m.omega < 20.0);
  }
  // int_0^inf w e^{-w} sin(w tau) dw = 2 tau / (1 + tau^2)^2.
  for (double tau : {0.3, 1.0, 2.0}) {
    const double expected = 2.0 / std::numbers::pi * 2.0 * tau / std::pow(1.0 + tau * tau, 2);
    CHECK(kernel_D(bath, tau) == doctest::Approx(expected).epsilon(1e-4));
  }
  CHECK_THROWS_AS(discretize_spectral_density(J, -1.0, 10, InverseTemperature::infinite()), ArgumentError);
  CHECK_THROWS_AS(discretize_spectral_density([](double) { return -1.0; }, 1.0, 10, InverseTemperature::infinite()),
                  ArgumentError);
}
