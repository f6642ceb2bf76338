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

// Observer-side quantities computed from snapshots: histograms, the winning
// opinion's size, change rates and friend-edge agreement.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "agentvote/core_model.hpp"
#include "agentvote/engine.hpp"

namespace agentvote {

struct TickMetrics {
  std::vector<std::uint32_t> histogram;  // count per value in [0, k]
  std::uint32_t winning_count = 0;
  double change_rate = 0.0;
  // Fraction of directed friend edges whose endpoints hold the same value.
  // Equals random_agreement when the graph has no edges.
  double friend_agreement = 0.0;
  // Sum over values of (count / n)^2: agreement of two agents drawn
  // uniformly with replacement.
  double random_agreement = 0.0;
  bool unanimous = false;
};

// Use snapshot itself as prev for the initial tick.
TickMetrics tick_metrics(std::span<const Value> prev, std::span<const Value> snapshot,
                         const FriendGraph& graph, Value k);

// Metrics for every tick 0..ticks() of a trajectory.
std::vector<TickMetrics> trajectory_metrics(const Trajectory& traj);

// Mean change rate over ticks burn_in+1 .. horizon(). Ticks past an absorbed
// stop count as zero change. Throws ValidationError if burn_in >= horizon().
double steady_change_rate(const Trajectory& traj, std::uint64_t burn_in);

// friend_agreement - random_agreement at the given tick (<= horizon()).
double clustering_gap(const Trajectory& traj, const FriendGraph& graph, std::uint64_t tick);

// Mean clustering_gap over the inclusive tick window [first, last].
double mean_clustering_gap(const Trajectory& traj, std::uint64_t first, std::uint64_t last);

// First tick at which the run was absorbing, if it got there.
std::optional<std::uint64_t> convergence_tick(const Trajectory& traj);

std::uint32_t final_winning_count(const Trajectory& traj);

}  // namespace agentvote
