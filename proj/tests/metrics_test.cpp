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

#include <gtest/gtest.h>

#include <numeric>

namespace agentvote {
namespace {

FriendGraph Edges(std::size_t n, std::vector<std::pair<AgentId, AgentId>> edges) {
  std::vector<std::vector<AgentId>> adj(n);
  for (const auto& [a, b] : edges) adj[a].push_back(b);
  return FriendGraph(std::move(adj));
}

// Trajectory whose per-tick change rates are changed[t] / n.
Trajectory WithChanges(std::uint32_t n, const std::vector<std::uint32_t>& changed) {
  Trajectory traj;
  traj.config.n = n;
  traj.config.k = 1;
  traj.config.max_ticks = changed.size();
  traj.graph = FriendGraph(std::vector<std::vector<AgentId>>(n));
  std::vector<Value> snap(n, 0);
  traj.snapshots.push_back(snap);
  for (const auto c : changed) {
    for (std::uint32_t i = 0; i < c; ++i) snap[i] = 1 - snap[i];
    traj.snapshots.push_back(snap);
    traj.events.push_back({c, c, c, c});
  }
  return traj;
}

TEST(TickMetricsTest, Unanimous) {
  const std::vector<Value> zeros(500, 0);
  Rng rng(1);
  const auto g = make_friend_graph(500, 20, rng);
  const auto m = tick_metrics(zeros, zeros, g, 1);
  EXPECT_EQ(m.histogram, (std::vector<std::uint32_t>{500, 0}));
  EXPECT_EQ(m.winning_count, 500u);
  EXPECT_DOUBLE_EQ(m.friend_agreement, 1.0);
  EXPECT_DOUBLE_EQ(m.random_agreement, 1.0);
  EXPECT_TRUE(m.unanimous);
  EXPECT_DOUBLE_EQ(m.change_rate, 0.0);
}

TEST(TickMetricsTest, ChangeRate) {
  const std::vector<Value> prev{0, 1}, cur{1, 1};
  const auto m = tick_metrics(prev, cur, FriendGraph(std::vector<std::vector<AgentId>>(2)), 1);
  EXPECT_DOUBLE_EQ(m.change_rate, 0.5);
  EXPECT_TRUE(m.unanimous);
}

TEST(TickMetricsTest, FriendAndRandomAgreement) {
  const std::vector<Value> snap{0, 0, 1, 1};
  const auto g = Edges(4, {{0, 1}, {2, 3}, {0, 2}});
  const auto m = tick_metrics(snap, snap, g, 1);
  // (0,1) and (2,3) agree, (0,2) does not; histogram {2,2} -> 0.25 + 0.25.
  EXPECT_DOUBLE_EQ(m.friend_agreement, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.random_agreement, 0.5);
  EXPECT_FALSE(m.unanimous);
}

TEST(TickMetricsTest, RejectsMismatchedLengths) {
  const std::vector<Value> a{0, 1}, b{0, 1, 1};
  EXPECT_THROW(tick_metrics(a, b, FriendGraph(), 1), ValidationError);
}

TEST(SteadyChangeRateTest, MeanAfterBurnIn) {
  const auto traj = WithChanges(10, {1, 2, 3});
  EXPECT_NEAR(steady_change_rate(traj, 1), 0.25, 1e-12);
  EXPECT_NEAR(steady_change_rate(traj, 0), 0.2, 1e-12);
  EXPECT_THROW(steady_change_rate(traj, 3), ValidationError);
}

TEST(SteadyChangeRateTest, UnanimousFromStartIsZero) {
  SimConfig c;
  c.n = 50;
  c.max_ticks = 200;
  const auto traj = run(Simulation(c, std::vector<Value>(50, 1)));
  ASSERT_TRUE(traj.absorbed);
  EXPECT_DOUBLE_EQ(steady_change_rate(traj, 20), 0.0);
}

TEST(SteadyChangeRateTest, AbsorbedTailCountsAsZero) {
  auto traj = WithChanges(10, {5, 5});
  traj.absorbed = true;
  traj.config.max_ticks = 10;
  // (0.5 + 0.5 + 8 * 0) / 10
  EXPECT_NEAR(steady_change_rate(traj, 0), 0.1, 1e-12);
  EXPECT_DOUBLE_EQ(steady_change_rate(traj, 5), 0.0);
}

TEST(ClusteringGapTest, UnanimousIsZero) {
  SimConfig c;
  c.n = 40;
  c.f = 4;
  c.friend_prob = 0.5;
  c.max_ticks = 10;
  const auto traj = run(Simulation(c, std::vector<Value>(40, 0)));
  EXPECT_DOUBLE_EQ(clustering_gap(traj, traj.graph, 0), 0.0);
}

TEST(ClusteringGapTest, AgreeingFriendsAboveRandom) {
  Trajectory traj;
  traj.config.n = 4;
  traj.config.k = 1;
  traj.config.max_ticks = 1;
  traj.snapshots = {{0, 0, 1, 1}};
  const auto g = Edges(4, {{0, 1}, {2, 3}});
  EXPECT_DOUBLE_EQ(clustering_gap(traj, g, 0), 0.5);
  EXPECT_THROW(clustering_gap(traj, g, 1), std::out_of_range);
}

TEST(MetricsPropertyTest, ObserverInvariantsOnRandomRuns) {
  Rng gen(4242);
  for (int trial = 0; trial < 60; ++trial) {
    SimConfig c;
    c.n = std::uniform_int_distribution<std::uint32_t>(2, 60)(gen);
    c.k = std::uniform_int_distribution<Value>(1, 3)(gen);
    c.v = std::uniform_int_distribution<std::uint32_t>(1, 5)(gen);
    c.f = std::uniform_int_distribution<std::uint32_t>(0, std::min(c.n - 1, 6u))(gen);
    c.friend_prob = c.f == 0 ? 0.0 : 0.5;
    c.max_ticks = 60;
    c.seed = gen();
    const auto traj = run(c);
    const auto metrics = trajectory_metrics(traj);
    ASSERT_EQ(metrics.size(), traj.snapshots.size());
    for (std::size_t t = 0; t < metrics.size(); ++t) {
      const auto& m = metrics[t];
      ASSERT_EQ(std::accumulate(m.histogram.begin(), m.histogram.end(), 0u), c.n);
      ASSERT_GE(m.change_rate, 0.0);
      ASSERT_LE(m.change_rate, 1.0);
      ASSERT_GE(m.friend_agreement, 0.0);
      ASSERT_LE(m.friend_agreement, 1.0);
      ASSERT_GE(m.random_agreement, 0.0);
      ASSERT_LE(m.random_agreement, 1.0 + 1e-12);
      ASSERT_EQ(m.unanimous, m.winning_count == c.n);
      if (m.unanimous) {
        ASSERT_DOUBLE_EQ(m.friend_agreement, 1.0);
        ASSERT_DOUBLE_EQ(m.random_agreement, 1.0);
      }
      if (t > 0) {
        ASSERT_LE(m.change_rate, static_cast<double>(traj.events[t - 1].integrations) / c.n + 1e-12);
        if (m.change_rate == 0.0) ASSERT_EQ(m.winning_count, metrics[t - 1].winning_count);
      }
    }
  }
}

TEST(ConvergenceTest, ReportsAbsorptionTick) {
  SimConfig c;
  c.n = 30;
  c.max_ticks = 50;
  const auto traj = run(Simulation(c, std::vector<Value>(30, 1)));
  EXPECT_EQ(convergence_tick(traj), std::optional<std::uint64_t>(1));
  EXPECT_EQ(final_winning_count(traj), 30u);
}

}  // namespace
}  // namespace agentvote
