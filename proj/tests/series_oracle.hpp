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


// Independent ground truth for the ordered-cumulant enumeration.

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "tclgen/cumulant.hpp"

namespace oracle {

// Symbolic series inversion: with M(t) = sum_k M_k the moment expansion of the
// propagator and dM_k its time derivative (first factor pinned to t),
//   K = dM (1 + M)^{-1},  (1 + M)^{-1} = sum_n Inv_n,
//   Inv_0 = 1,  Inv_n = - sum_{k=1..n} M_k Inv_{n-k}.
// A word is the list of factor lengths; its coefficient is an integer.
using Word = std::vector<int>;
using Series = std::map<Word, int>;

inline Series inverse_order(int n, std::map<int, Series>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  Series out;
  if (n == 0) {
    out[{}] = 1;
  } else {
    for (int k = 1; k <= n; ++k)
      for (const auto& [word, c] : inverse_order(n - k, memo)) {
        Word w{k};
        w.insert(w.end(), word.begin(), word.end());
        out[w] -= c;
      }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return memo[n] = out;
}

// Every way to place labels 1..n-1 on slots 1..n-1 so that labels rise inside
// each factor; the product of independent time-ordered integrals over [0, t]
// is the sum over these orderings.
inline std::vector<tclgen::CumulantTerm> series_inversion_terms(int n) {
  std::map<int, Series> memo;
  Series k_n;
  for (int k = 1; k <= n; ++k)
    for (const auto& [word, c] : inverse_order(n - k, memo)) {
      Word w{k};
      w.insert(w.end(), word.begin(), word.end());
      k_n[w] += c;
    }
  std::vector<tclgen::CumulantTerm> out;
  for (const auto& [word, c] : k_n) {
    if (c == 0) continue;
    std::vector<int> labels(static_cast<std::size_t>(n - 1));
    std::iota(labels.begin(), labels.end(), 1);
    do {
      std::vector<int> times{0};
      times.insert(times.end(), labels.begin(), labels.end());
      bool ok = true;
      std::size_t slot = 0;
      for (int len : word) {
        for (int j = 1; j < len; ++j)
          if (times[slot + j] < times[slot + j - 1]) ok = false;
        slot += static_cast<std::size_t>(len);
      }
      if (ok) out.push_back({n, word, times, c});
    } while (std::next_permutation(labels.begin(), labels.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
