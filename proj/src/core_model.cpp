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

#include "agentvote/core_model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>
#include <utility>

namespace agentvote {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kDominant:
      return "dominant";
    case Strategy::kConsensus:
      return "consensus";
    case Strategy::kMixed:
      return "mixed";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "dominant") return Strategy::kDominant;
  if (name == "consensus") return Strategy::kConsensus;
  if (name == "mixed") return Strategy::kMixed;
  throw ValidationError("strategy: expected one of dominant, consensus, mixed (got '" +
                        std::string(name) + "')");
}

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::vector<std::string> config_errors(const SimConfig& c) {
  std::vector<std::string> errors;
  auto add = [&errors](std::string field, const std::string& msg) {
    errors.push_back(std::move(field) + ": " + msg);
  };
  if (c.n < 1) add("n", "must be >= 1 (got 0)");
  if (c.k < 0) add("k", "must be >= 0 (got " + std::to_string(c.k) + ")");
  if (c.v < 1) add("v", "must be >= 1 (got " + std::to_string(c.v) + ")");
  if (c.n >= 1 && c.f > c.n - 1) {
    add("f", "must be <= n - 1 = " + std::to_string(c.n - 1) + " (got " + std::to_string(c.f) +
                 ")");
  }
  if (!is_probability(c.friend_prob)) add("friend_prob", "must lie in [0, 1]");
  if (c.f == 0 && c.friend_prob != 0.0) add("friend_prob", "must be 0 when f = 0");
  if (!(c.activation_prob > 0.0 && c.activation_prob <= 1.0)) {
    add("activation_prob", "must lie in (0, 1]");
  }
  if (!is_probability(c.mixed_consensus_prob)) add("mixed_consensus_prob", "must lie in [0, 1]");
  if (c.max_ticks < 1) add("max_ticks", "must be >= 1");
  if (c.symmetric_friends && (static_cast<std::uint64_t>(c.n) * c.f) % 2 != 0) {
    add("symmetric_friends", "requires n * f to be even");
  }
  return errors;
}

void validate(const SimConfig& config) {
  const auto errors = config_errors(config);
  if (errors.empty()) return;
  std::ostringstream os;
  os << "invalid configuration";
  for (const auto& e : errors) os << "\n  " << e;
  throw ValidationError(os.str());
}

FriendGraph::FriendGraph(std::vector<std::vector<AgentId>> adjacency)
    : adjacency_(std::move(adjacency)) {}

std::size_t FriendGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& list : adjacency_) total += list.size();
  return total;
}

FriendGraph make_friend_graph(std::uint32_t n, std::uint32_t f, Rng& rng) {
  if (n == 0 ? f > 0 : f > n - 1) {
    throw ValidationError("f: friend count " + std::to_string(f) + " infeasible for n = " +
                          std::to_string(n));
  }
  std::vector<std::vector<AgentId>> adjacency(n);
  if (f == 0) return FriendGraph(std::move(adjacency));

  std::vector<AgentId> others(n - 1);
  for (AgentId id = 0; id < n; ++id) {
    // Others in ascending order, then a partial Fisher-Yates for the first f.
    for (AgentId j = 0, w = 0; j < n; ++j) {
      if (j != id) others[w++] = j;
    }
    for (std::uint32_t i = 0; i < f; ++i) {
      std::uniform_int_distribution<std::uint32_t> pick(i, n - 2);
      std::swap(others[i], others[pick(rng)]);
    }
    adjacency[id].assign(others.begin(), others.begin() + f);
  }
  return FriendGraph(std::move(adjacency));
}

FriendGraph make_symmetric_friend_graph(std::uint32_t n, std::uint32_t f, Rng& rng) {
  if (n == 0 ? f > 0 : f > n - 1) {
    throw ValidationError("f: friend count " + std::to_string(f) + " infeasible for n = " +
                          std::to_string(n));
  }
  if ((static_cast<std::uint64_t>(n) * f) % 2 != 0) {
    throw ValidationError("symmetric_friends: n * f must be even");
  }
  std::vector<std::vector<AgentId>> adjacency(n);
  if (f == 0) return FriendGraph(std::move(adjacency));

  // Circulant f-regular start: offsets 1..f/2, plus the antipode when f is odd.
  std::vector<std::pair<AgentId, AgentId>> edges;
  for (AgentId a = 0; a < n; ++a) {
    for (std::uint32_t off = 1; off <= f / 2; ++off) edges.emplace_back(a, (a + off) % n);
    if (f % 2 == 1 && a < n / 2) edges.emplace_back(a, a + n / 2);
  }
  auto key = [n](AgentId a, AgentId b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * n + b;
  };
  std::unordered_set<std::uint64_t> present;
  for (const auto& [a, b] : edges) present.insert(key(a, b));

  std::uniform_int_distribution<std::size_t> pick_edge(0, edges.size() - 1);
  std::bernoulli_distribution orient(0.5);
  const std::size_t swaps = 10 * edges.size();
  for (std::size_t s = 0; s < swaps; ++s) {
    auto& e1 = edges[pick_edge(rng)];
    auto& e2 = edges[pick_edge(rng)];
    auto [a, b] = e1;
    auto [c, d] = e2;
    if (orient(rng)) std::swap(c, d);
    // (a,b),(c,d) -> (a,d),(c,b)
    if (a == d || c == b || a == c || b == d) continue;
    if (present.contains(key(a, d)) || present.contains(key(c, b))) continue;
    present.erase(key(a, b));
    present.erase(key(c, d));
    present.insert(key(a, d));
    present.insert(key(c, b));
    e1 = {a, d};
    e2 = {c, b};
  }
  for (const auto& [a, b] : edges) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  for (auto& list : adjacency) std::sort(list.begin(), list.end());
  return FriendGraph(std::move(adjacency));
}

AgentId select_target(AgentId sender, std::span<const AgentId> friends, std::uint32_t n,
                      double friend_prob, Rng& rng) {
  if (friend_prob > 0.0) {
    if (friends.empty()) {
      throw ValidationError("select_target: friend_prob > 0 requires a non-empty friend list");
    }
    std::bernoulli_distribution to_friend(friend_prob);
    if (to_friend(rng)) {
      std::uniform_int_distribution<std::size_t> pick(0, friends.size() - 1);
      return friends[pick(rng)];
    }
  }
  if (n < 2) throw ValidationError("select_target: no other agent to address");
  std::uniform_int_distribution<AgentId> pick(0, n - 2);
  const AgentId j = pick(rng);
  return j >= sender ? j + 1 : j;
}

}  // namespace agentvote
