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

#include "tclgen/tcl.hpp"

#include <cmath>
#include <sstream>

#include "tclgen/cumulant.hpp"
#include "tclgen/parallel.hpp"

namespace tclgen {

namespace {

using K = KernelKind;
using S = SuperSide;

constexpr KernelFactor kf(K kind, int later, int earlier) { return {kind, later, earlier}; }
constexpr StringFactor c(int slot) { return {S::Commutator, slot}; }
constexpr StringFactor a(int slot) { return {S::Anticommutator, slot}; }

std::vector<K4DisplayTerm> make_table() {
  const Complex q = 0.25;
  const Complex iq = Complex(0.0, 0.25);
  return {
      // bracketed pair sums
      {q, {{kf(K::D1, 0, 2), kf(K::D1, 1, 3)}, {kf(K::D1, 0, 3), kf(K::D1, 1, 2)}}, {c(0), c(1), c(2), c(3)}},
      {-q, {{kf(K::D, 0, 2), kf(K::D, 1, 3)}, {kf(K::D, 0, 3), kf(K::D, 1, 2)}}, {c(0), c(1), a(2), a(3)}},
      {-iq, {{kf(K::D1, 0, 2), kf(K::D, 1, 3)}, {kf(K::D, 0, 3), kf(K::D1, 1, 2)}}, {c(0), c(1), c(2), a(3)}},
      {-iq, {{kf(K::D, 0, 2), kf(K::D1, 1, 3)}, {kf(K::D1, 0, 3), kf(K::D, 1, 2)}}, {c(0), c(1), a(2), c(3)}},
      // single products, (t,t2)(t1,t3) pairing
      {q, {{kf(K::D, 0, 2), kf(K::D, 1, 3)}}, {c(0), a(2), c(1), a(3)}},
      {-q, {{kf(K::D1, 0, 2), kf(K::D1, 1, 3)}}, {c(0), c(2), c(1), c(3)}},
      {iq, {{kf(K::D, 0, 2), kf(K::D1, 1, 3)}}, {c(0), a(2), c(1), c(3)}},
      {iq, {{kf(K::D1, 0, 2), kf(K::D, 1, 3)}}, {c(0), c(2), c(1), a(3)}},
      // single products, (t,t3)(t1,t2) pairing
      {q, {{kf(K::D, 0, 3), kf(K::D, 1, 2)}}, {c(0), a(3), c(1), a(2)}},
      {-q, {{kf(K::D1, 0, 3), kf(K::D1, 1, 2)}}, {c(0), c(3), c(1), c(2)}},
      {iq, {{kf(K::D, 0, 3), kf(K::D1, 1, 2)}}, {c(0), a(3), c(1), c(2)}},
      {iq, {{kf(K::D1, 0, 3), kf(K::D, 1, 2)}}, {c(0), c(3), c(1), a(2)}},
  };
}

// The evaluator below relies on this layout: Xc(t) leads every string, and in
// each kernel product exactly one factor reaches back to t3 from t or t1
// while the other links t or t1 to t2.
void check_table_layout(const std::vector<K4DisplayTerm>& table) {
  for (const auto& term : table) {
    if (term.string[0].side != S::Commutator || term.string[0].slot != 0)
      throw std::logic_error("K4 table: strings must start with Xc(t)");
    for (const auto& product : term.products) {
      int inner = 0;
      for (const auto& f : product) {
        if (f.later > 1) throw std::logic_error("K4 table: kernel must start at t or t1");
        if (f.earlier == 3) ++inner;
        else if (f.earlier != 2) throw std::logic_error("K4 table: kernel must end at t2 or t3");
      }
      if (inner != 1) throw std::logic_error("K4 table: exactly one kernel per product must reach t3");
    }
  }
}

std::string slot_name(int slot) { return slot == 0 ? "t" : "t" + std::to_string(slot); }

std::string format_complex(Complex z) {
  std::ostringstream os;
  os << std::showpos << z.real() << (z.imag() < 0 ? "-" : "+") << std::noshowpos << std::abs(z.imag()) << "i";
  return os.str();
}

struct NodeOps {
  Matrix comm;
  Matrix anti;
};

NodeOps node_ops(const SystemModel& model, double s) {
  const Matrix x = model.heisenberg_X(s);
  return {commutator_super(x).matrix(), anticommutator_super(x).matrix()};
}

}  // namespace

const std::vector<K4DisplayTerm>& k4_influence_table() {
  static const std::vector<K4DisplayTerm> table = [] {
    auto t = make_table();
    check_table_layout(t);
    return t;
  }();
  return table;
}

std::string format_k4_table() {
  std::ostringstream os;
  os << "# term prefactor kernels string\n";
  int index = 1;
  for (const auto& term : k4_influence_table()) {
    os << index++ << ' ' << format_complex(term.prefactor) << ' ';
    for (std::size_t p = 0; p < term.products.size(); ++p) {
      if (p) os << " + ";
      for (std::size_t f = 0; f < 2; ++f) {
        const auto& k = term.products[p][f];
        if (f) os << '*';
        os << (k.kernel == K::D ? "D" : "D1") << '(' << slot_name(k.later) << '-' << slot_name(k.earlier) << ')';
      }
    }
    os << ' ';
    for (std::size_t j = 0; j < 4; ++j) {
      if (j) os << ' ';
      os << (term.string[j].side == S::Commutator ? "Xc" : "Xa") << '(' << slot_name(term.string[j].slot) << ')';
    }
    os << '\n';
  }
  return os.str();
}

SuperOp K2_influence(const SystemModel& model, const BathSpec& bath, double t, const QuadratureSpec& quad) {
  const int d = model.dim();
  if (t == 0.0) return SuperOp::zero(d);
  NestedQuadrature q(quad, t);
  KernelLookup kernels(bath, q);
  const QuadNode top = q.top();
  Matrix acc = Matrix::Zero(d * d, d * d);
  for (const QuadNode& n1 : q.below(top)) {
    const NodeOps ops = node_ops(model, n1.x);
    acc += n1.w * (Complex(0.0, 0.5 * kernels.D(top, n1)) * ops.anti - 0.5 * kernels.D1(top, n1) * ops.comm);
  }
  return SuperOp(d, commutator_super(model.heisenberg_X(t)).matrix() * acc);
}

SuperOp influence_phase(const SystemModel& model, const BathSpec& bath, double t, const QuadratureSpec& quad) {
  const int d = model.dim();
  if (t == 0.0) return SuperOp::zero(d);
  NestedQuadrature q(quad, t);
  KernelLookup kernels(bath, q);
  Matrix acc = Matrix::Zero(d * d, d * d);
  for (const QuadNode& n1 : q.below(q.top())) {
    Matrix inner = Matrix::Zero(d * d, d * d);
    for (const QuadNode& n2 : q.below(n1)) {
      const NodeOps ops = node_ops(model, n2.x);
      inner += n2.w * (Complex(0.0, 0.5 * kernels.D(n1, n2)) * ops.anti - 0.5 * kernels.D1(n1, n2) * ops.comm);
    }
    acc += n1.w * commutator_super(model.heisenberg_X(n1.x)).matrix() * inner;
  }
  return SuperOp(d, std::move(acc));
}

SuperOp K4_influence(const SystemModel& model, const BathSpec& bath, double t, const QuadratureSpec& quad) {
  const int d = model.dim();
  const int dd = d * d;
  if (t == 0.0) return SuperOp::zero(d);
  const auto& table = k4_influence_table();
  NestedQuadrature q(quad, t);
  KernelLookup kernels(bath, q);
  const QuadNode top = q.top();

  auto kernel_value = [&](KernelKind kind, const QuadNode& later, const QuadNode& earlier) {
    return kind == K::D ? kernels.D(later, earlier) : kernels.D1(later, earlier);
  };

  // inner[kernel][partner][side] = sum_{t3} w3 kernel(t_partner - t3) Op_side(t3)
  // for partner in {t, t1}.
  Matrix inner[2][2][2];
  for (auto& by_partner : inner)
    for (auto& by_side : by_partner)
      for (auto& m : by_side) m.resize(dd, dd);

  Matrix acc = Matrix::Zero(dd, dd);
  Matrix mixed(dd, dd);
  for (const QuadNode& n1 : q.below(top)) {
    const NodeOps ops1 = node_ops(model, n1.x);
    const QuadNode partners[2] = {top, n1};
    for (const QuadNode& n2 : q.below(n1)) {
      const auto level3 = q.below(n2);
      if (level3.empty()) continue;
      const NodeOps ops2 = node_ops(model, n2.x);
      for (auto& by_partner : inner)
        for (auto& by_side : by_partner)
          for (auto& m : by_side) m.setZero();
      for (const QuadNode& n3 : level3) {
        const NodeOps ops3 = node_ops(model, n3.x);
        for (int kind = 0; kind < 2; ++kind)
          for (int p = 0; p < 2; ++p) {
            const double v = n3.w * kernel_value(static_cast<KernelKind>(kind), partners[p], n3);
            inner[kind][p][0] += v * ops3.comm;
            inner[kind][p][1] += v * ops3.anti;
          }
      }

      const double w12 = n1.w * n2.w;
      for (const K4DisplayTerm& term : table) {
        int slot3_side = 0;
        for (const auto& f : term.string)
          if (f.slot == 3) slot3_side = (f.side == S::Commutator) ? 0 : 1;
        mixed.setZero();
        for (const auto& product : term.products) {
          const KernelFactor& in = (product[0].earlier == 3) ? product[0] : product[1];
          const KernelFactor& out = (product[0].earlier == 3) ? product[1] : product[0];
          const double outer = kernel_value(out.kernel, partners[out.later], n2);
          mixed += outer * inner[static_cast<int>(in.kernel)][in.later][slot3_side];
        }
        auto factor = [&](const StringFactor& f) -> const Matrix& {
          const bool comm = f.side == S::Commutator;
          switch (f.slot) {
            case 1:
              return comm ? ops1.comm : ops1.anti;
            case 2:
              return comm ? ops2.comm : ops2.anti;
            default:
              return mixed;
          }
        };
        acc.noalias() += (w12 * term.prefactor) * (factor(term.string[1]) * factor(term.string[2]) * factor(term.string[3]));
      }
    }
  }
  return SuperOp(d, commutator_super(model.heisenberg_X(t)).matrix() * acc);
}

double K4CumulantForms::relative_difference() const {
  if (ordered_norm == 0.0) return difference_norm == 0.0 ? 0.0 : INFINITY;
  return difference_norm / ordered_norm;
}

K4CumulantForms K4_cumulant_forms(const SystemModel& model, const BathSpec& bath, double t,
                                  const QuadratureSpec& quad) {
  const int d = model.dim();
  SuperOp ordered = K_n_cumulant(model, bath, t, 4, quad);
  if (t == 0.0) return {ordered, SuperOp::zero(d), 0.0, 0.0, 0.0};

  NestedQuadrature q(quad, t);
  std::vector<double> four(4);
  auto four_point = [&](std::span<const double> ts) -> Matrix {
    four[0] = t;
    std::copy(ts.begin(), ts.end(), four.begin() + 1);
    return moment_superop(model, bath, four).matrix();
  };
  const Matrix moment4 = integrate_simplex(q, 3, four_point, d * d, d * d);
  const SuperOp product = K_n_cumulant(model, bath, t, 2, quad) * second_moment_integral(model, bath, t, quad);
  SuperOp unordered(d, moment4 - product.matrix());

  const double diff = (ordered.matrix() - unordered.matrix()).norm();
  const double ordered_norm = ordered.norm();
  return {std::move(ordered), std::move(unordered), diff, ordered_norm, product.norm()};
}

SuperOp K4_cumulant_ordered(const SystemModel& model, const BathSpec& bath, double t, const QuadratureSpec& quad) {
  K4CumulantForms forms = K4_cumulant_forms(model, bath, t, quad);
  const double scale = std::max(forms.ordered_norm, forms.product_norm);
  if (forms.difference_norm > 10.0 * quad.tolerance * scale) {
    std::ostringstream os;
    os << "K4 time-ordered and unordered cumulant forms disagree at t=" << t
       << ": |difference|=" << forms.difference_norm << ", scale=" << scale;
    throw EquivalenceError(os.str());
  }
  return std::move(forms.time_ordered);
}

Generator::Generator(std::shared_ptr<const Tables> tables, double alpha)
    : tables_(std::move(tables)), alpha_(alpha) {
  const double a2 = alpha_ * alpha_;
  const double a4 = a2 * a2;
  combined_.reserve(tables_->grid.size());
  for (std::size_t k = 0; k < tables_->grid.size(); ++k) {
    Matrix m = a2 * tables_->k2[k];
    if (tables_->order == 4) m += a4 * tables_->k4[k];
    combined_.push_back(std::move(m));
  }
}

Generator Generator::with_alpha(double alpha) const {
  if (!std::isfinite(alpha) || alpha < 0.0) throw ArgumentError("alpha must be finite and >= 0");
  return Generator(tables_, alpha);
}

void Generator::evaluate_into(double t, Matrix& out) const {
  const auto& grid = tables_->grid;
  const double t_max = grid.back();
  const double slack = 1e-9 * std::max(1.0, t_max);
  if (!(t >= -slack) || t > t_max + slack)
    throw ArgumentError("generator evaluated outside its grid [0, " + std::to_string(t_max) + "]");
  const std::size_t last = grid.size() - 1;
  const double h = t_max / static_cast<double>(last);
  const double pos = std::clamp(t / h, 0.0, static_cast<double>(last));
  std::size_t k = static_cast<std::size_t>(pos);
  if (k >= last) k = last - 1;
  if (last < 3) {
    const double frac = pos - static_cast<double>(k);
    out = (1.0 - frac) * combined_[k] + frac * combined_[k + 1];
    return;
  }
  // Cubic Lagrange through four neighbouring nodes; exact at the nodes.
  const std::size_t j = std::min(k > 0 ? k - 1 : 0, last - 3);
  const double s = pos - static_cast<double>(j);
  const double w0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
  const double w1 = s * (s - 2.0) * (s - 3.0) / 2.0;
  const double w2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
  const double w3 = s * (s - 1.0) * (s - 2.0) / 6.0;
  out = w0 * combined_[j] + w1 * combined_[j + 1];
  out += w2 * combined_[j + 2];
  out += w3 * combined_[j + 3];
}

const Matrix& Generator::K4_at(std::size_t node) const {
  static const Matrix empty;
  if (tables_->order == 2) {
    (void)tables_->k2.at(node);
    return empty;
  }
  return tables_->k4.at(node);
}

SuperOp Generator::operator()(double t) const {
  Matrix m;
  evaluate_into(t, m);
  return SuperOp(tables_->dim, std::move(m));
}

Generator build_generator(const SystemModel& model, const BathSpec& bath, int order, const QuadratureSpec& quad,
                          const GeneratorGrid& grid) {
  if (order != 2 && order != 4) throw ArgumentError("generator order must be 2 or 4");
  if (!(grid.t_max > 0.0) || !std::isfinite(grid.t_max)) throw ArgumentError("generator t_max must be > 0");
  if (grid.intervals < 1) throw ArgumentError("generator grid needs at least one interval");
  quad.validate();

  auto tables = std::make_shared<Generator::Tables>();
  tables->order = order;
  tables->dim = model.dim();
  const std::size_t n = static_cast<std::size_t>(grid.intervals) + 1;
  tables->grid.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    tables->grid[k] = (k + 1 == n) ? grid.t_max : grid.t_max * static_cast<double>(k) / grid.intervals;
  tables->k2.resize(n);
  if (order == 4) tables->k4.resize(n);

  parallel_for(n, grid.threads, [&](std::size_t k) {
    const double t = tables->grid[k];
    tables->k2[k] = K2_influence(model, bath, t, quad).matrix();
    if (order == 4) tables->k4[k] = K4_influence(model, bath, t, quad).matrix();
  });

  // Refinement check at the far end of the grid.
  QuadratureSpec fine = quad;
  fine.nodes_per_unit_time *= 2;
  // Relative to the largest cached value: K(t_max) itself may pass near zero.
  auto check = [&](const std::vector<Matrix>& table, const Matrix& refined, const char* name) {
    double scale = 0.0;
    for (const Matrix& m : table) scale = std::max(scale, m.norm());
    const double rel = scale > 0.0 ? (table.back() - refined).norm() / scale : 0.0;
    if (rel > quad.tolerance) {
      std::ostringstream os;
      os << name << " quadrature not converged at t=" << grid.t_max << ": relative refinement change " << rel
         << " > tolerance " << quad.tolerance;
      tables->warnings.push_back(os.str());
    }
  };
  check(tables->k2, K2_influence(model, bath, grid.t_max, fine).matrix(), "K2");
  if (order == 4) check(tables->k4, K4_influence(model, bath, grid.t_max, fine).matrix(), "K4");

  return Generator(std::move(tables), model.alpha());
}

}  // namespace tclgen
