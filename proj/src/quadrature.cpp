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

#include "tclgen/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace tclgen {

namespace {

constexpr int kMinGaussOrder = 4;
constexpr int kMaxGaussOrder = 1024;

}  // namespace

void QuadratureSpec::validate() const {
  if (nodes_per_unit_time < 4) throw ArgumentError("quadrature: nodes_per_unit_time must be >= 4");
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw ArgumentError("quadrature: tolerance must be > 0");
}

const char* to_string(QuadratureScheme scheme) {
  switch (scheme) {
    case QuadratureScheme::SimpsonUniform:
      return "simpson-uniform";
    case QuadratureScheme::GaussLegendreNested:
      return "gauss-legendre-nested";
  }
  return "?";
}

std::optional<QuadratureScheme> parse_quadrature_scheme(std::string_view name) {
  if (name == "simpson-uniform" || name == "simpson") return QuadratureScheme::SimpsonUniform;
  if (name == "gauss-legendre-nested" || name == "gauss-legendre" || name == "gl")
    return QuadratureScheme::GaussLegendreNested;
  return std::nullopt;
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw ArgumentError("gauss_legendre: order must be >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

std::vector<double> uniform_simplex_weights(int k, double h) {
  if (k <= 0) return {};
  std::vector<double> w(k + 1, 0.0);
  if (k == 1) {
    w[0] = w[1] = 0.5 * h;
    return w;
  }
  const int simpson_end = (k % 2 == 0) ? k : k - 3;
  for (int j = 0; j + 2 <= simpson_end; j += 2) {
    w[j] += h / 3.0;
    w[j + 1] += 4.0 * h / 3.0;
    w[j + 2] += h / 3.0;
  }
  if (k % 2 == 1) {
    const int s = k - 3;
    w[s] += 3.0 * h / 8.0;
    w[s + 1] += 9.0 * h / 8.0;
    w[s + 2] += 9.0 * h / 8.0;
    w[s + 3] += 3.0 * h / 8.0;
  }
  return w;
}

NestedQuadrature::NestedQuadrature(const QuadratureSpec& spec, double t) : spec_(spec) {
  spec_.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) throw ArgumentError("quadrature: t must be finite and >= 0");
  if (uniform()) {
    intervals_ = (t == 0.0) ? 0 : std::max(2, static_cast<int>(std::ceil(spec_.nodes_per_unit_time * t - 1e-9)));
    h_ = intervals_ > 0 ? t / intervals_ : 0.0;
    simpson_weights_.reserve(intervals_ + 1);
    for (int k = 0; k <= intervals_; ++k) simpson_weights_.push_back(uniform_simplex_weights(k, h_));
    top_ = {t, 1.0, intervals_};
  } else {
    const int max_order = gauss_order(t);
    gauss_rules_.resize(max_order + 1);
    for (int n = kMinGaussOrder; n <= max_order; ++n) gauss_rules_[n] = gauss_legendre(n);
    top_ = {t, 1.0, -1};
  }
}

int NestedQuadrature::gauss_order(double upper) const {
  const double raw = std::ceil(spec_.nodes_per_unit_time * upper - 1e-9);
  if (raw > kMaxGaussOrder) throw ArgumentError("quadrature: Gauss-Legendre order exceeds 1024");
  return std::max(kMinGaussOrder, static_cast<int>(raw) + 4);
}

std::vector<QuadNode> NestedQuadrature::below(const QuadNode& upper) const {
  std::vector<QuadNode> out;
  if (upper.x <= 0.0) return out;
  if (uniform()) {
    if (upper.index < 0 || upper.index > intervals_)
      throw ArgumentError("quadrature: node is not on the uniform grid");
    const auto& w = simpson_weights_[upper.index];
    out.reserve(w.size());
    for (int j = 0; j < static_cast<int>(w.size()); ++j) {
      const double x = (j == upper.index) ? upper.x : j * h_;
      out.push_back({x, w[j], j});
    }
    return out;
  }
  const GaussRule& rule = gauss_rules_[gauss_order(upper.x)];
  const double half = 0.5 * upper.x;
  out.reserve(rule.nodes.size());
  // Descending order so the first node is the latest time.
  for (std::size_t i = rule.nodes.size(); i-- > 0;)
    out.push_back({half * (rule.nodes[i] + 1.0), half * rule.weights[i], -1});
  return out;
}

KernelLookup::KernelLookup(const BathSpec& bath, const NestedQuadrature& quad) : bath_(bath) {
  if (quad.uniform() && quad.intervals() > 0)
    table_ = tabulate_kernels(bath, quad.top().x, quad.intervals() + 1);
}

double KernelLookup::D(const QuadNode& later, const QuadNode& earlier) const {
  if (table_ && later.index >= 0 && earlier.index >= 0) {
    const int lag = later.index - earlier.index;
    return lag >= 0 ? table_->D[lag] : -table_->D[-lag];
  }
  return kernel_D(bath_, later.x - earlier.x);
}

double KernelLookup::D1(const QuadNode& later, const QuadNode& earlier) const {
  if (table_ && later.index >= 0 && earlier.index >= 0) {
    const int lag = std::abs(later.index - earlier.index);
    return table_->D1[lag];
  }
  return kernel_D1(bath_, later.x - earlier.x);
}

namespace {

void integrate_level(const NestedQuadrature& quad, const QuadNode& upper, int level, int depth, double weight,
                     std::vector<double>& times,
                     const std::function<Matrix(std::span<const double>)>& f, Matrix& acc) {
  for (const QuadNode& node : quad.below(upper)) {
    if (node.w == 0.0) continue;
    times[level] = node.x;
    const double w = weight * node.w;
    if (level + 1 == depth)
      acc += w * f(times);
    else
      integrate_level(quad, node, level + 1, depth, w, times, f, acc);
  }
}

}  // namespace

Matrix integrate_simplex(const NestedQuadrature& quad, int depth,
                         const std::function<Matrix(std::span<const double>)>& f, Eigen::Index rows,
                         Eigen::Index cols) {
  if (depth < 1) throw ArgumentError("integrate_simplex: depth must be >= 1");
  Matrix acc = Matrix::Zero(rows, cols);
  std::vector<double> times(depth, 0.0);
  integrate_level(quad, quad.top(), 0, depth, 1.0, times, f, acc);
  return acc;
}

}  // namespace tclgen
