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

// tcl.hpp — time-local generators from the influence phase.
//
// With Xc(s) = [X(s), .] and Xa(s) = {X(s), .}:
//
//   K2(t) = int_0^t dt1 { (i/2) D(t-t1) Xc(t) Xa(t1) - (1/2) D1(t-t1) Xc(t) Xc(t1) }
//
// and K4(t) is a triple time-ordered integral of a sum of kernel products times
// four-factor super-operator strings, held as data in k4_influence_table().
// The cumulant route in cumulant.hpp computes the same quantities from Wick
// moments; the functions here also compare the two.

#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "tclgen/algebra.hpp"
#include "tclgen/bath.hpp"
#include "tclgen/quadrature.hpp"

namespace tclgen {

enum class KernelKind { D, D1 };
enum class SuperSide { Commutator, Anticommutator };

/// Kernel evaluated at t_later - t_earlier; slots 0..3 stand for t, t1, t2, t3.
struct KernelFactor {
  KernelKind kernel;
  int later;
  int earlier;
};

struct StringFactor {
  SuperSide side;
  int slot;
};

/// One displayed summand: prefactor * (sum over products of two kernels) *
/// string[0] string[1] string[2] string[3].
struct K4DisplayTerm {
  Complex prefactor;
  std::vector<std::array<KernelFactor, 2>> products;
  std::array<StringFactor, 4> string;
};

const std::vector<K4DisplayTerm>& k4_influence_table();
/// Human-readable dump of the table, one summand per line.
std::string format_k4_table();

SuperOp K2_influence(const SystemModel& model, const BathSpec& bath, double t, const QuadratureSpec& quad);
SuperOp K4_influence(const SystemModel& model, const BathSpec& bath, double t, const QuadratureSpec& quad);

/// i Phi_t[Xc, Xa] = int_0^t dt' int_0^t' dt'' {(i/2) D Xc(t') Xa(t'') - (1/2) D1 Xc(t') Xc(t'')}.
SuperOp influence_phase(const SystemModel& model, const BathSpec& bath, double t, const QuadratureSpec& quad);

/// Both cumulant forms of K4:
///   time_ordered: four-point moment minus the three ordered products;
///   unordered:    four-point moment minus K2(t) * int_0^t int_0^t2 <L L>.
struct K4CumulantForms {
  SuperOp time_ordered;
  SuperOp unordered;
  double difference_norm;
  double ordered_norm;
  double product_norm;

  /// ||time_ordered - unordered|| / ||time_ordered||.
  double relative_difference() const;
};

K4CumulantForms K4_cumulant_forms(const SystemModel& model, const BathSpec& bath, double t,
                                  const QuadratureSpec& quad);

/// The time-ordered form, after checking it against the unordered one.
/// Throws EquivalenceError when ||difference|| exceeds
/// 10 * tolerance * max(||time_ordered||, ||product term||).
SuperOp K4_cumulant_ordered(const SystemModel& model, const BathSpec& bath, double t, const QuadratureSpec& quad);

struct GeneratorGrid {
  double t_max = 1.0;
  int intervals = 100;
  unsigned threads = 0;
};

/// alpha^2 K2(t) (+ alpha^4 K4(t)) cached on a uniform grid, interpolated by
/// four-node cubic Lagrange in between. Immutable; copies share the tables.
class Generator {
 public:
  int order() const { return tables_->order; }
  int dim() const { return tables_->dim; }
  double alpha() const { return alpha_; }
  double t_max() const { return tables_->grid.back(); }
  const std::vector<double>& grid() const { return tables_->grid; }
  const std::vector<std::string>& warnings() const { return tables_->warnings; }

  SuperOp operator()(double t) const;
  /// Generator matrix at t written into out (d^2 x d^2), no allocation.
  void evaluate_into(double t, Matrix& out) const;

  const Matrix& K2_at(std::size_t node) const { return tables_->k2.at(node); }
  /// Empty matrices for order 2.
  const Matrix& K4_at(std::size_t node) const;

  Generator with_alpha(double alpha) const;

 private:
  struct Tables {
    int order = 2;
    int dim = 2;
    std::vector<double> grid;
    std::vector<Matrix> k2;
    std::vector<Matrix> k4;
    std::vector<std::string> warnings;
  };

  Generator(std::shared_ptr<const Tables> tables, double alpha);

  std::shared_ptr<const Tables> tables_;
  double alpha_;
  std::vector<Matrix> combined_;

  friend Generator build_generator(const SystemModel&, const BathSpec&, int, const QuadratureSpec&,
                                   const GeneratorGrid&);
};

/// order in {2, 4}. K2 and K4 come from the influence-phase formulas.
Generator build_generator(const SystemModel& model, const BathSpec& bath, int order, const QuadratureSpec& quad,
                          const GeneratorGrid& grid);

}  // namespace tclgen
