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

// cumulant.hpp — ordered cumulants and Gaussian moments of Liouvillian
// strings.
//
// The n-th order generator is
//
//   K_n(t) = int_{t >= t1 >= ... >= t_{n-1} >= 0} <L(t) L(t1) ... L(t_{n-1})>_oc
//
// where the ordered cumulant is a signed sum of products of moments
// <L ... L>. Each summand is a CumulantTerm: a split of the n-factor string
// into q consecutive substrings, a distribution of the time labels
// t1..t_{n-1} over the slots after the first (the first slot always carries
// t), chronological inside every substring, and the sign (-1)^(q-1).
//
// Moments are reduced super-operators <L(s1)...L(s2m)> rho =
// tr_B{L(s1)...L(s2m)(rho (x) rho_B)} with L(s) Y = i [X(s) B(s), Y]. They are
// computed by expanding each L into left and right multiplications and
// evaluating the resulting bath moment with Wick's theorem.

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tclgen/algebra.hpp"
#include "tclgen/bath.hpp"
#include "tclgen/quadrature.hpp"

namespace tclgen {

struct CumulantTerm {
  int order = 0;
  /// Substring lengths, each >= 1, summing to order.
  std::vector<int> partition;
  /// Time label per slot: 0 stands for t, j >= 1 for t_j. times[0] == 0.
  std::vector<int> times;
  int sign = 1;

  bool has_odd_substring() const;

  /// One-line text form, e.g. "- 2+2 t,t2|t1,t3".
  std::string to_string() const;

  friend bool operator==(const CumulantTerm&, const CumulantTerm&) = default;
  friend auto operator<=>(const CumulantTerm&, const CumulantTerm&) = default;
};

/// All ordered-cumulant summands of order n (n >= 1), including substrings of
/// odd length.
std::vector<CumulantTerm> enumerate_ordered_cumulant_terms(int n);

/// Removes every term with an odd-length substring (these vanish for a
/// Gaussian reservoir with zero mean).
std::vector<CumulantTerm> drop_odd_terms(std::vector<CumulantTerm> terms);

/// All perfect pairings of {0, ..., count-1}; (count-1)!! of them.
std::vector<std::vector<std::pair<int, int>>> perfect_pairings(int count);

/// <L(s1) ... L(s_{2m})> as a reduced super-operator. Times must be
/// non-increasing and of even count (an empty list gives the identity).
SuperOp moment_superop(const SystemModel& model, const BathSpec& bath, std::span<const double> times);

/// K_n(t) assembled from the even ordered-cumulant terms; n in {2, 4}.
SuperOp K_n_cumulant(const SystemModel& model, const BathSpec& bath, double t, int n,
                     const QuadratureSpec& quad);

/// int_0^t dt1 int_0^t1 dt2 <L(t1) L(t2)>, the second-order term of the
/// moment expansion of the reduced propagator.
SuperOp second_moment_integral(const SystemModel& model, const BathSpec& bath, double t,
                               const QuadratureSpec& quad);

}  // namespace tclgen
