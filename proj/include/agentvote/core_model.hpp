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

// Static structure of a voting collective: knowledge values, agent state,
// the preferential-channel (friend) graph, run configuration and target
// selection.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace agentvote {

// An agent's knowledge state, always within [0, k] for the run's k.
using Value = std::int32_t;
using AgentId = std::uint32_t;

// Every random draw in a run comes from one of these, seeded from the config.
using Rng = std::mt19937_64;

// Raised for configuration or argument errors the caller can fix.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a file cannot be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Strategy { kDominant, kConsensus, kMixed };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

struct SimConfig {
  std::uint32_t n = 500;
  Value k = 1;
  std::uint32_t v = 3;
  std::uint32_t f = 0;
  double friend_prob = 0.0;
  double activation_prob = 0.5;
  Strategy strategy = Strategy::kDominant;
  // Only consulted when strategy == kMixed.
  double mixed_consensus_prob = 0.5;
  bool include_self = true;
  // Undirected friend relation; not part of the base protocol.
  bool symmetric_friends = false;
  std::uint64_t max_ticks = 500;
  std::uint64_t seed = 1;

  bool operator==(const SimConfig&) const = default;
};

// One "field: message" entry per violated constraint; empty when valid.
std::vector<std::string> config_errors(const SimConfig& config);

// Throws ValidationError listing every violated constraint.
void validate(const SimConfig& config);

struct AgentState {
  AgentId id = 0;
  Value current = 0;
  std::vector<AgentId> friends;
  std::vector<Value> inbox;  // FIFO by arrival
};

// Directed adjacency, fixed for a run. Every node has the same out-degree.
class FriendGraph {
 public:
  FriendGraph() = default;
  explicit FriendGraph(std::vector<std::vector<AgentId>> adjacency);

  std::size_t size() const { return adjacency_.size(); }
  std::span<const AgentId> friends_of(AgentId id) const { return adjacency_.at(id); }
  std::size_t edge_count() const;
  const std::vector<std::vector<AgentId>>& adjacency() const { return adjacency_; }

  bool operator==(const FriendGraph&) const = default;

 private:
  std::vector<std::vector<AgentId>> adjacency_;
};

// Each agent gets a uniform random f-subset of the other n - 1 agents.
// Throws ValidationError when f > n - 1.
FriendGraph make_friend_graph(std::uint32_t n, std::uint32_t f, Rng& rng);

// Random f-regular undirected graph, stored as symmetric directed lists.
// Requires n * f even. Built from a circulant graph by degree-preserving
// edge swaps.
FriendGraph make_symmetric_friend_graph(std::uint32_t n, std::uint32_t f, Rng& rng);

// With probability friend_prob a uniform friend of the sender, otherwise a
// uniform agent among the other n - 1. Never returns sender.
AgentId select_target(AgentId sender, std::span<const AgentId> friends, std::uint32_t n,
                      double friend_prob, Rng& rng);

}  // namespace agentvote
