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

// quadrature.hpp — nested rules for time-ordered integrals
//
//   int_0^t dt1 int_0^t1 dt2 ... int_0^t(k-1) dtk f(t1, ..., tk).
//
// Two schemes share one interface. A NestedQuadrature is built for a fixed
// outer limit t; below(node) returns the nodes of the rule on [0, node.x].
//
//  * SimpsonUniform: every level lives on one uniform grid of step h = t / K.
//    The rule on [0, k h] is composite Simpson for even k, Simpson plus a
//    closing 3/8 panel for odd k >= 3, and the trapezoid for k = 1. Nodes
//    carry their grid index so kernel values can be read from a KernelTable.
//  * GaussLegendreNested: each level gets its own Gauss-Legendre rule with
//    max(4, ceil(nodes_per_unit_time * upper)) nodes. Spectrally accurate for
//    the smooth integrands used here.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tclgen/bath.hpp"
#include "tclgen/common.hpp"

namespace tclgen {

enum class QuadratureScheme { SimpsonUniform, GaussLegendreNested };

struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::GaussLegendreNested;
  int nodes_per_unit_time = 12;
  double tolerance = 1e-8;

  void validate() const;
};

const char* to_string(QuadratureScheme scheme);
std::optional<QuadratureScheme> parse_quadrature_scheme(std::string_view name);

struct QuadNode {
  double x;
  double w;
  int index;  // grid index for uniform rules, -1 otherwise
};

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);

/// Weights of the uniform rule on [0, k h] (k + 1 nodes); empty for k = 0.
std::vector<double> uniform_simplex_weights(int k, double h);

class NestedQuadrature {
 public:
  NestedQuadrature(const QuadratureSpec& spec, double t);

  /// The outer limit t as a node (weight 1).
  QuadNode top() const { return top_; }
  /// Nodes of the rule for int_0^{upper.x}.
  std::vector<QuadNode> below(const QuadNode& upper) const;

  bool uniform() const { return spec_.scheme == QuadratureScheme::SimpsonUniform; }
  /// Uniform grid step (0 for Gauss-Legendre).
  double step() const { return h_; }
  /// Number of uniform grid intervals K (0 for Gauss-Legendre).
  int intervals() const { return intervals_; }
  const QuadratureSpec& spec() const { return spec_; }

 private:
  int gauss_order(double upper) const;

  QuadratureSpec spec_;
  QuadNode top_;
  double h_ = 0.0;
  int intervals_ = 0;
  std::vector<std::vector<double>> simpson_weights_;
  std::vector<GaussRule> gauss_rules_;  // indexed by order
};

/// Kernel values at node pairs. Uses a precomputed table on the uniform grid
/// when both nodes carry indices, analytic evaluation otherwise.
class KernelLookup {
 public:
  KernelLookup(const BathSpec& bath, const NestedQuadrature& quad);

  double D(const QuadNode& later, const QuadNode& earlier) const;
  double D1(const QuadNode& later, const QuadNode& earlier) const;

 private:
  const BathSpec& bath_;
  std::optional<KernelTable> table_;
};

/// Integrates f over the ordered simplex t >= s_1 >= ... >= s_depth >= 0 and
/// returns the weighted sum. f receives the times (s_1, ..., s_depth).
Matrix integrate_simplex(const NestedQuadrature& quad, int depth,
                         const std::function<Matrix(std::span<const double>)>& f, Eigen::Index rows,
                         Eigen::Index cols);

}  // namespace tclgen
