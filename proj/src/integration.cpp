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

#include "agentvote/integration.hpp"

#include <algorithm>
#include <vector>

namespace agentvote {

namespace {

std::vector<Value> sorted_copy(std::span<const Value> values) {
  std::vector<Value> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Value dominant_value(const VoteSet& votes) {
  if (votes.values.empty()) throw ValidationError("dominant_value: empty vote multiset");
  const auto sorted = sorted_copy(votes.values);

  // Ascending scan, so the first run reaching the best count is the smallest mode.
  Value best = sorted.front();
  std::size_t best_count = 0;
  std::size_t own_count = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const std::size_t count = j - i;
    if (count > best_count) {
      best = sorted[i];
      best_count = count;
    }
    if (votes.own && sorted[i] == *votes.own) own_count = count;
    i = j;
  }
  if (votes.own && own_count == best_count) return *votes.own;
  return best;
}

Value consensus_value(const VoteSet& votes, Value k) {
  if (votes.values.empty()) throw ValidationError("consensus_value: empty vote multiset");
  for (const Value x : votes.values) {
    if (x < 0 || x > k) {
      throw ValidationError("consensus_value: value " + std::to_string(x) + " outside [0, " +
                            std::to_string(k) + "]");
    }
  }
  std::vector<Value> buf(votes.values.begin(), votes.values.end());
  const auto mid = buf.begin() + static_cast<std::ptrdiff_t>((buf.size() - 1) / 2);
  std::nth_element(buf.begin(), mid, buf.end());
  return *mid;
}

Value mixed_integrate(const VoteSet& votes, Value k, double mixed_consensus_prob, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  const bool use_consensus = mixed_consensus_prob >= 1.0 || u < mixed_consensus_prob;
  return use_consensus ? consensus_value(votes, k) : dominant_value(votes);
}

Value integrate(Strategy strategy, const VoteSet& votes, Value k, double mixed_consensus_prob,
                Rng& rng) {
  switch (strategy) {
    case Strategy::kDominant:
      return dominant_value(votes);
    case Strategy::kConsensus:
      return consensus_value(votes, k);
    case Strategy::kMixed:
      return mixed_integrate(votes, k, mixed_consensus_prob, rng);
  }
  throw ValidationError("integrate: unknown strategy");
}

}  // namespace agentvote
