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

#include "tclgen/cumulant.hpp"

#include <algorithm>
#include <functional>

namespace tclgen {

bool CumulantTerm::has_odd_substring() const {
  return std::any_of(partition.begin(), partition.end(), [](int len) { return len % 2 != 0; });
}

std::string CumulantTerm::to_string() const {
  std::string out(sign > 0 ? "+" : "-");
  out += ' ';
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (i) out += '+';
    out += std::to_string(partition[i]);
  }
  out += ' ';
  std::size_t slot = 0;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (i) out += '|';
    for (int j = 0; j < partition[i]; ++j, ++slot) {
      if (j) out += ',';
      out += times[slot] == 0 ? std::string("t") : "t" + std::to_string(times[slot]);
    }
  }
  return out;
}

namespace {

void compositions(int remaining, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (int part = remaining; part >= 1; --part) {
    current.push_back(part);
    compositions(remaining - part, current, out);
    current.pop_back();
  }
}

// Distributes the sorted labels in `pool` over blocks of the given sizes,
// each block ascending (i.e. chronological: a smaller label is a later time).
void distribute(const std::vector<int>& sizes, std::size_t block, std::vector<int> pool,
                std::vector<std::vector<int>>& blocks, const std::function<void()>& emit) {
  if (block == sizes.size()) {
    emit();
    return;
  }
  const int need = sizes[block];
  const int n = static_cast<int>(pool.size());
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + need, true);
  // prev_permutation over a sorted-descending mask yields subsets in
  // lexicographic order of their members.
  do {
    std::vector<int> chosen;
    std::vector<int> rest;
    for (int i = 0; i < n; ++i) (pick[i] ? chosen : rest).push_back(pool[i]);
    blocks[block] = chosen;
    distribute(sizes, block + 1, rest, blocks, emit);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

}  // namespace

std::vector<CumulantTerm> enumerate_ordered_cumulant_terms(int n) {
  if (n < 1) throw ArgumentError("cumulant order must be >= 1");
  std::vector<std::vector<int>> comps;
  std::vector<int> current;
  compositions(n, current, comps);
  std::stable_sort(comps.begin(), comps.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });

  std::vector<int> labels(n - 1);
  for (int j = 0; j < n - 1; ++j) labels[j] = j + 1;

  std::vector<CumulantTerm> terms;
  for (const auto& comp : comps) {
    std::vector<int> sizes = comp;
    sizes[0] -= 1;  // first slot is pinned to t
    std::vector<std::vector<int>> blocks(sizes.size());
    const int q = static_cast<int>(comp.size());
    distribute(sizes, 0, labels, blocks, [&]() {
      CumulantTerm term;
      term.order = n;
      term.partition = comp;
      term.sign = (q % 2 == 1) ? 1 : -1;
      term.times.push_back(0);
      for (const auto& b : blocks) term.times.insert(term.times.end(), b.begin(), b.end());
      terms.push_back(std::move(term));
    });
  }
  return terms;
}

std::vector<CumulantTerm> drop_odd_terms(std::vector<CumulantTerm> terms) {
  std::erase_if(terms, [](const CumulantTerm& t) { return t.has_odd_substring(); });
  return terms;
}

std::vector<std::vector<std::pair<int, int>>> perfect_pairings(int count) {
  if (count < 0 || count % 2 != 0) throw ArgumentError("perfect_pairings: count must be even and >= 0");
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<std::pair<int, int>> current;
  std::vector<bool> used(count, false);
  std::function<void()> recurse = [&]() {
    int first = -1;
    for (int i = 0; i < count; ++i)
      if (!used[i]) {
        first = i;
        break;
      }
    if (first < 0) {
      out.push_back(current);
      return;
    }
    used[first] = true;
    for (int j = first + 1; j < count; ++j) {
      if (used[j]) continue;
      used[j] = true;
      current.emplace_back(first, j);
      recurse();
      current.pop_back();
      used[j] = false;
    }
    used[first] = false;
  };
  recurse();
  return out;
}

SuperOp moment_superop(const SystemModel& model, const BathSpec& bath, std::span<const double> times) {
  const int count = static_cast<int>(times.size());
  const int d = model.dim();
  if (count % 2 != 0) throw ArgumentError("moment_superop: odd number of times");
  for (int j = 1; j < count; ++j)
    if (times[j] > times[j - 1]) throw ArgumentError("moment_superop: times must be non-increasing");
  if (count == 0) return SuperOp::identity(d);
  if (count > 20) throw ArgumentError("moment_superop: too many factors");

  std::vector<Matrix> xs;
  xs.reserve(count);
  for (double s : times) xs.push_back(model.heisenberg_X(s));
  const auto pairings = perfect_pairings(count);
  const Matrix id = Matrix::Identity(d, d);

  Matrix acc = Matrix::Zero(d * d, d * d);
  std::vector<double> bath_times;
  bath_times.reserve(count);
  for (unsigned mask = 0; mask < (1u << count); ++mask) {
    // bit j set: L(s_j) acts by left multiplication (+i), otherwise by right
    // multiplication (-i). Applying L(s_{2m}) first, the left product reads
    // X(s_1)...X(s_2m) restricted to left slots and the right product
    // X(s_2m)...X(s_1) restricted to right slots. Cyclicity of the bath trace
    // puts the right string before the left one.
    Matrix left = id;
    Matrix right = id;
    Complex coef{1.0, 0.0};
    bath_times.clear();
    for (int j = count - 1; j >= 0; --j)
      if (!(mask & (1u << j))) {
        right = right * xs[j];
        bath_times.push_back(times[j]);
        coef *= -kI;
      }
    for (int j = 0; j < count; ++j)
      if (mask & (1u << j)) {
        left = left * xs[j];
        bath_times.push_back(times[j]);
        coef *= kI;
      }
    Complex wick{0.0, 0.0};
    for (const auto& pairing : pairings) {
      Complex prod{1.0, 0.0};
      for (const auto& [a, b] : pairing) prod *= bath_correlation(bath, bath_times[a] - bath_times[b]);
      wick += prod;
    }
    acc += (coef * wick) * kron(right.transpose(), left);
  }
  return SuperOp(d, std::move(acc));
}

SuperOp K_n_cumulant(const SystemModel& model, const BathSpec& bath, double t, int n,
                     const QuadratureSpec& quad) {
  if (n != 2 && n != 4)
    throw ArgumentError("K_n_cumulant: numeric assembly supports n = 2 and n = 4 only");
  const int d = model.dim();
  if (t == 0.0) return SuperOp::zero(d);
  NestedQuadrature q(quad, t);
  const auto terms = drop_odd_terms(enumerate_ordered_cumulant_terms(n));

  std::vector<double> slot_times(n);
  std::vector<double> sub;
  auto integrand = [&](std::span<const double> ts) -> Matrix {
    slot_times[0] = t;
    for (int j = 1; j < n; ++j) slot_times[j] = ts[j - 1];
    Matrix total = Matrix::Zero(d * d, d * d);
    for (const CumulantTerm& term : terms) {
      Matrix product = Matrix::Identity(d * d, d * d);
      std::size_t slot = 0;
      for (int len : term.partition) {
        sub.clear();
        for (int j = 0; j < len; ++j, ++slot) sub.push_back(slot_times[term.times[slot]]);
        product = product * moment_superop(model, bath, sub).matrix();
      }
      total += static_cast<double>(term.sign) * product;
    }
    return total;
  };
  return SuperOp(d, integrate_simplex(q, n - 1, integrand, d * d, d * d));
}

SuperOp second_moment_integral(const SystemModel& model, const BathSpec& bath, double t,
                               const QuadratureSpec& quad) {
  const int d = model.dim();
  if (t == 0.0) return SuperOp::zero(d);
  NestedQuadrature q(quad, t);
  auto integrand = [&](std::span<const double> ts) -> Matrix {
    return moment_superop(model, bath, ts).matrix();
  };
  return SuperOp(d, integrate_simplex(q, 2, integrand, d * d, d * d));
}

}  // namespace tclgen
