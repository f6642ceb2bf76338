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

// Discrete-time scheduler for asynchronous dominant-value voting.
//
// One tick runs three phases in a fixed order:
//   1. every agent (ascending id) activates with activation_prob and, if
//      active, addresses its current value to a target from select_target;
//   2. pending values are appended to the target inboxes in sender order;
//   3. every agent (ascending id) holding at least v values integrates the
//      first v (plus its own value when include_self is set), adopts the
//      result and clears its whole inbox.
// All randomness comes from one generator seeded with config.seed and is
// drawn in that phase/id order, so a config fully determines a run.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "agentvote/core_model.hpp"

namespace agentvote {

struct TickEvents {
  std::uint32_t sent = 0;
  std::uint32_t delivered = 0;
  std::uint32_t integrations = 0;
  std::uint32_t changed = 0;

  bool operator==(const TickEvents&) const = default;
};

class Simulation {
 public:
  // Validates config, builds the friend graph and draws uniform initial values.
  explicit Simulation(const SimConfig& config);
  // As above, but starts from the given values instead of random ones.
  Simulation(const SimConfig& config, std::span<const Value> initial_values);

  TickEvents step();

  // Overwrites every agent's value and empties all inboxes.
  void inject(std::span<const Value> values);

  // Unanimous, and no inbox holds a dissenting value. No later tick can
  // change anything from such a state.
  bool absorbed() const;

  std::vector<Value> values() const;
  std::span<const AgentState> agents() const { return agents_; }
  const FriendGraph& graph() const { return graph_; }
  const SimConfig& config() const { return config_; }
  std::uint64_t tick() const { return tick_; }

 private:
  struct Delivery {
    AgentId target;
    Value value;
  };

  void check_values(std::span<const Value> values) const;

  SimConfig config_;
  Rng rng_;
  FriendGraph graph_;
  std::vector<AgentState> agents_;
  std::vector<Delivery> pending_;
  std::vector<Value> votes_;
  std::uint64_t tick_ = 0;
};

struct Trajectory {
  SimConfig config;
  FriendGraph graph;
  // snapshots[0] is the initial state; snapshots[t] the state after tick t.
  std::vector<std::vector<Value>> snapshots;
  // events[t - 1] belongs to tick t.
  std::vector<TickEvents> events;
  // The run stopped early in an absorbing state.
  bool absorbed = false;

  std::uint64_t ticks() const { return snapshots.empty() ? 0 : snapshots.size() - 1; }
  // Last tick the run speaks for: max_ticks when absorbed (later snapshots
  // are known to repeat the final one), otherwise ticks().
  std::uint64_t horizon() const;
  // Snapshot at tick t <= horizon(); ticks past an absorbed stop map to the
  // final snapshot. Throws std::out_of_range otherwise.
  const std::vector<Value>& snapshot_at(std::uint64_t tick) const;

  bool operator==(const Trajectory&) const = default;
};

// Steps until max_ticks or until the state is absorbing, recording a
// snapshot after every tick.
Trajectory run(const SimConfig& config);
Trajectory run(Simulation sim);

}  // namespace agentvote
