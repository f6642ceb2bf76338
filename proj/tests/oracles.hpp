// Copyright 2026 The agentvote Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force reference implementations. Deliberately naive and independent
// of the library code they check: no sorting, no selection algorithms.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <vector>

namespace agentvote::oracle {

inline std::size_t multiplicity(const std::vector<int>& values, int x) {
  std::size_t c = 0;
  for (int y : values) c += (y == x) ? 1 : 0;
  return c;
}

// Scans every candidate in [lo, hi]: maximal multiplicity, own value if it
// is among the maxima, else the smallest maximum.
inline int mode(const std::vector<int>& values, std::optional<int> own, int lo, int hi) {
  std::size_t best = 0;
  for (int c = lo; c <= hi; ++c) {
    const auto m = multiplicity(values, c);
    if (m > best) best = m;
  }
  if (own && multiplicity(values, *own) == best) return *own;
  for (int c = lo; c <= hi; ++c) {
    if (multiplicity(values, c) == best) return c;
  }
  return lo;
}

inline long abs_distance_sum(const std::vector<int>& values, int c) {
  long s = 0;
  for (int x : values) s += std::labs(static_cast<long>(x) - c);
  return s;
}

// Smallest c in [0, k] minimizing sum |x - c|, by exhaustive search.
inline int median_argmin(const std::vector<int>& values, int k) {
  int best = 0;
  long best_cost = abs_distance_sum(values, 0);
  for (int c = 1; c <= k; ++c) {
    const long cost = abs_distance_sum(values, c);
    if (cost < best_cost) {
      best = c;
      best_cost = cost;
    }
  }
  return best;
}

// Every multiset of size 1..max_size over [0, k], as non-decreasing sequences.
inline std::vector<std::vector<int>> all_multisets(int k, int max_size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int min_value) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (int x = min_value; x <= k; ++x) {
      cur.push_back(x);
      self(self, x);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace agentvote::oracle
