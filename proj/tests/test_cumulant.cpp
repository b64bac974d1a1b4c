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
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "series_oracle.hpp"
#include "tclgen/cumulant.hpp"
#include "tclgen/models.hpp"

using namespace tclgen;

namespace {

long double_factorial(int k) { return k <= 1 ? 1 : k * double_factorial(k - 2); }

}  // namespace

TEST_CASE("ordered cumulant enumeration, low orders") {
  CHECK_THROWS_AS(enumerate_ordered_cumulant_terms(0), ArgumentError);

  const auto one = enumerate_ordered_cumulant_terms(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].partition == std::vector<int>{1});
  CHECK(drop_odd_terms(one).empty());

  const auto two = drop_odd_terms(enumerate_ordered_cumulant_terms(2));
  REQUIRE(two.size() == 1);
  CHECK(two[0].partition == std::vector<int>{2});
  CHECK(two[0].times == std::vector<int>{0, 1});
  CHECK(two[0].sign == 1);
  CHECK(two[0].to_string() == "+ 2 t,t1");

  CHECK(drop_odd_terms(enumerate_ordered_cumulant_terms(3)).empty());
  CHECK(drop_odd_terms(enumerate_ordered_cumulant_terms(5)).empty());

  const auto four = drop_odd_terms(enumerate_ordered_cumulant_terms(4));
  REQUIRE(four.size() == 4);
  std::vector<std::string> lines;
  for (const auto& t : four) lines.push_back(t.to_string());
  CHECK(lines == std::vector<std::string>{"+ 4 t,t1,t2,t3", "- 2+2 t,t1|t2,t3", "- 2+2 t,t2|t1,t3",
                                          "- 2+2 t,t3|t1,t2"});
}

TEST_CASE("enumeration matches symbolic series inversion") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    auto enumerated = enumerate_ordered_cumulant_terms(n);
    std::sort(enumerated.begin(), enumerated.end());
    const auto oracle_terms = oracle::series_inversion_terms(n);
    CHECK(enumerated == oracle_terms);
    for (const auto& t : oracle_terms) CHECK(std::abs(t.sign) == 1);
    auto even = drop_odd_terms(enumerated);
    std::vector<CumulantTerm> oracle_even;
    for (const auto& t : oracle_terms) {
      bool odd = false;
      for (int len : t.partition) odd = odd || (len % 2 == 1);
      if (!odd) oracle_even.push_back(t);
    }
    std::sort(even.begin(), even.end());
    CHECK(even == oracle_even);
  }
  // Even part of n = 6: 6 (1), 4+2 (C(5,3) = 10), 2+4 (C(5,1) = 5),
  // 2+2+2 (5 * C(4,2) = 30).
  const auto six = drop_odd_terms(enumerate_ordered_cumulant_terms(6));
  CHECK(six.size() == 46);
}

TEST_CASE("perfect pairings") {
  for (int m = 0; m <= 5; ++m) {
    const auto pairings = perfect_pairings(2 * m);
    CHECK(static_cast<long>(pairings.size()) == double_factorial(2 * m - 1));
    std::set<std::vector<std::pair<int, int>>> unique(pairings.begin(), pairings.end());
    CHECK(unique.size() == pairings.size());
    for (const auto& p : pairings) {
      std::vector<int> seen(static_cast<std::size_t>(2 * m), 0);
      for (auto [a, b] : p) {
        CHECK(a < b);
        ++seen[static_cast<std::size_t>(a)];
        ++seen[static_cast<std::size_t>(b)];
      }
      CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
    }
  }
  CHECK_THROWS_AS(perfect_pairings(3), ArgumentError);
}

TEST_CASE("two-point moment identity") {
  std::mt19937 rng(7);
  const SystemModel model(oracle::random_hermitian(3, rng), oracle::random_hermitian(3, rng), 1.0);
  const BathSpec bath({{0.8, 1.2, 1.0}, {0.5, 0.4, 2.0}}, InverseTemperature::finite(1.5));
  for (auto [s1, s2] : {std::pair{1.0, 0.3}, std::pair{2.5, 2.5}, std::pair{0.4, 0.0}}) {
    const double ts[] = {s1, s2};
    const SuperOp m = moment_superop(model, bath, ts);
    const SuperOp expected =
        Complex(0, 0.5 * kernel_D(bath, s1 - s2)) *
            (commutator_super(model.heisenberg_X(s1)) * anticommutator_super(model.heisenberg_X(s2))) -
        Complex(0.5 * kernel_D1(bath, s1 - s2)) *
            (commutator_super(model.heisenberg_X(s1)) * commutator_super(model.heisenberg_X(s2)));
    CHECK((m - expected).norm() < 1e-12 * (1.0 + expected.norm()));
  }
  CHECK((moment_superop(model, bath, {}).matrix() - Matrix::Identity(9, 9)).norm() == 0.0);
}

TEST_CASE("moments agree with a truncated Fock computation") {
  const Matrix h = 0.5 * pauli_z() + 0.3 * pauli_x();
  const Matrix x = pauli_x();
  const SystemModel model(h, x, 1.0);
  const BathSpec bath({{1.0, 1.0, 1.0}}, InverseTemperature::finite(1.0));
  const oracle::FockBath fock({{1.0, 1.0, 1.0}}, 1.0, 34);
  const std::vector<std::vector<double>> cases{{1.0, 0.2}, {1.5, 1.1, 0.6, 0.1}, {2.0, 2.0, 0.7, 0.0}};
  for (const auto& times : cases) {
    CAPTURE(times.size());
    const SuperOp m = moment_superop(model, bath, times);
    const Matrix expected = oracle::fock_moment(h, x, fock, times);
    CHECK((m.matrix() - expected).norm() < 1e-8 * (1.0 + expected.norm()));
  }
  const std::vector<double> six{1.9, 1.4, 1.0, 0.8, 0.3, 0.1};
  const Matrix expected = oracle::fock_moment(h, x, fock, six);
  CHECK((moment_superop(model, bath, six).matrix() - expected).norm() < 1e-7 * (1.0 + expected.norm()));
}

TEST_CASE("moments annihilate the trace and preserve Hermiticity") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 4; ++trial) {
    const int d = 2 + trial % 2;
    const SystemModel model(oracle::random_hermitian(d, rng), oracle::random_hermitian(d, rng), 1.0);
    const BathSpec bath({{0.9, 1.1, 1.0}}, InverseTemperature::finite(0.8));
    const double times[] = {2.0, 1.3, 0.9, 0.2};
    const SuperOp m = moment_superop(model, bath, times);
    const Matrix y = oracle::random_hermitian(d, rng);
    const Matrix out = m.apply(y);
    CHECK(std::abs(out.trace()) < 1e-10 * (1.0 + out.norm()));
    CHECK(hermiticity_deviation(out) < 1e-10 * (1.0 + out.norm()));
  }
  const SystemModel model(pauli_z(), pauli_x(), 1.0);
  const BathSpec bath({{1.0, 1.0, 1.0}}, InverseTemperature::infinite());
  const double odd[] = {1.0, 0.5, 0.1};
  const double rising[] = {0.1, 0.5};
  CHECK_THROWS_AS(moment_superop(model, bath, odd), ArgumentError);
  CHECK_THROWS_AS(moment_superop(model, bath, rising), ArgumentError);
  CHECK_THROWS_AS(K_n_cumulant(model, bath, 1.0, 6, QuadratureSpec{}), ArgumentError);
  CHECK_THROWS_AS(K_n_cumulant(model, bath, 1.0, 3, QuadratureSpec{}), ArgumentError);
}
