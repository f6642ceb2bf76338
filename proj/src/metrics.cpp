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

#include "agentvote/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace agentvote {

namespace {

std::vector<std::uint32_t> histogram_of(std::span<const Value> snapshot, Value k) {
  std::vector<std::uint32_t> hist(static_cast<std::size_t>(k) + 1, 0);
  for (const Value x : snapshot) {
    if (x < 0 || x > k) {
      throw ValidationError("snapshot value " + std::to_string(x) + " outside [0, " +
                            std::to_string(k) + "]");
    }
    ++hist[static_cast<std::size_t>(x)];
  }
  return hist;
}

double random_agreement_of(std::span<const std::uint32_t> hist, std::size_t n) {
  if (n == 0) return 1.0;
  double sum = 0.0;
  for (const auto c : hist) {
    const double share = static_cast<double>(c) / static_cast<double>(n);
    sum += share * share;
  }
  return sum;
}

double friend_agreement_of(std::span<const Value> snapshot, const FriendGraph& graph,
                           double fallback) {
  std::size_t edges = 0;
  std::size_t agree = 0;
  for (AgentId a = 0; a < graph.size(); ++a) {
    for (const AgentId b : graph.friends_of(a)) {
      ++edges;
      if (snapshot[a] == snapshot[b]) ++agree;
    }
  }
  return edges == 0 ? fallback : static_cast<double>(agree) / static_cast<double>(edges);
}

}  // namespace

TickMetrics tick_metrics(std::span<const Value> prev, std::span<const Value> snapshot,
                         const FriendGraph& graph, Value k) {
  if (prev.size() != snapshot.size()) {
    throw ValidationError("tick_metrics: snapshot lengths differ (" + std::to_string(prev.size()) +
                          " vs " + std::to_string(snapshot.size()) + ")");
  }
  if (graph.size() != 0 && graph.size() != snapshot.size()) {
    throw ValidationError("tick_metrics: graph size does not match snapshot length");
  }
  const std::size_t n = snapshot.size();
  TickMetrics m;
  m.histogram = histogram_of(snapshot, k);
  m.winning_count = *std::max_element(m.histogram.begin(), m.histogram.end());
  std::size_t changed = 0;
  for (std::size_t i = 0; i < n; ++i) changed += prev[i] != snapshot[i] ? 1 : 0;
  m.change_rate = n == 0 ? 0.0 : static_cast<double>(changed) / static_cast<double>(n);
  m.random_agreement = random_agreement_of(m.histogram, n);
  m.friend_agreement = friend_agreement_of(snapshot, graph, m.random_agreement);
  m.unanimous = m.winning_count == n;
  return m;
}

std::vector<TickMetrics> trajectory_metrics(const Trajectory& traj) {
  std::vector<TickMetrics> out;
  out.reserve(traj.snapshots.size());
  for (std::size_t t = 0; t < traj.snapshots.size(); ++t) {
    const auto& prev = traj.snapshots[t == 0 ? 0 : t - 1];
    out.push_back(tick_metrics(prev, traj.snapshots[t], traj.graph, traj.config.k));
  }
  return out;
}

double steady_change_rate(const Trajectory& traj, std::uint64_t burn_in) {
  const std::uint64_t horizon = traj.horizon();
  if (burn_in >= horizon) {
    throw ValidationError("burn_in " + std::to_string(burn_in) + " must be below the horizon " +
                          std::to_string(horizon));
  }
  const double n = static_cast<double>(traj.snapshots.front().size());
  double sum = 0.0;
  for (std::uint64_t t = burn_in + 1; t <= traj.ticks(); ++t) {
    const auto& prev = traj.snapshots[t - 1];
    const auto& cur = traj.snapshots[t];
    std::size_t changed = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) changed += prev[i] != cur[i] ? 1 : 0;
    sum += n == 0 ? 0.0 : static_cast<double>(changed) / n;
  }
  return sum / static_cast<double>(horizon - burn_in);
}

double clustering_gap(const Trajectory& traj, const FriendGraph& graph, std::uint64_t tick) {
  const auto& snap = traj.snapshot_at(tick);
  const auto m = tick_metrics(snap, snap, graph, traj.config.k);
  return m.friend_agreement - m.random_agreement;
}

double mean_clustering_gap(const Trajectory& traj, std::uint64_t first, std::uint64_t last) {
  if (first > last) throw ValidationError("mean_clustering_gap: empty tick window");
  double sum = 0.0;
  for (std::uint64_t t = first; t <= last; ++t) sum += clustering_gap(traj, traj.graph, t);
  return sum / static_cast<double>(last - first + 1);
}

std::optional<std::uint64_t> convergence_tick(const Trajectory& traj) {
  if (!traj.absorbed) return std::nullopt;
  return traj.ticks();
}

std::uint32_t final_winning_count(const Trajectory& traj) {
  const auto hist = histogram_of(traj.snapshots.back(), traj.config.k);
  return *std::max_element(hist.begin(), hist.end());
}

}  // namespace agentvote
