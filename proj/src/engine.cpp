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

#include "agentvote/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "agentvote/integration.hpp"

namespace agentvote {

namespace {

FriendGraph build_graph(const SimConfig& config, Rng& rng) {
  return config.symmetric_friends ? make_symmetric_friend_graph(config.n, config.f, rng)
                                  : make_friend_graph(config.n, config.f, rng);
}

}  // namespace

Simulation::Simulation(const SimConfig& config) : config_(config), rng_(config.seed) {
  validate(config_);
  graph_ = build_graph(config_, rng_);
  agents_.resize(config_.n);
  std::uniform_int_distribution<Value> initial(0, config_.k);
  for (AgentId id = 0; id < config_.n; ++id) {
    agents_[id].id = id;
    agents_[id].current = initial(rng_);
    const auto friends = graph_.friends_of(id);
    agents_[id].friends.assign(friends.begin(), friends.end());
  }
}

Simulation::Simulation(const SimConfig& config, std::span<const Value> initial_values)
    : config_(config), rng_(config.seed) {
  validate(config_);
  check_values(initial_values);
  graph_ = build_graph(config_, rng_);
  agents_.resize(config_.n);
  for (AgentId id = 0; id < config_.n; ++id) {
    agents_[id].id = id;
    agents_[id].current = initial_values[id];
    const auto friends = graph_.friends_of(id);
    agents_[id].friends.assign(friends.begin(), friends.end());
  }
}

void Simulation::check_values(std::span<const Value> values) const {
  if (values.size() != config_.n) {
    throw ValidationError("expected " + std::to_string(config_.n) + " values, got " +
                          std::to_string(values.size()));
  }
  for (const Value x : values) {
    if (x < 0 || x > config_.k) {
      throw ValidationError("value " + std::to_string(x) + " outside [0, " +
                            std::to_string(config_.k) + "]");
    }
  }
}

void Simulation::inject(std::span<const Value> values) {
  check_values(values);
  for (auto& agent : agents_) {
    agent.current = values[agent.id];
    agent.inbox.clear();
  }
}

TickEvents Simulation::step() {
  TickEvents events;
  pending_.clear();

  // Phase 1: activation and target selection, values as of tick start.
  if (config_.n >= 2) {
    std::bernoulli_distribution activate(config_.activation_prob);
    for (const auto& agent : agents_) {
      if (!activate(rng_)) continue;
      const AgentId target =
          select_target(agent.id, agent.friends, config_.n, config_.friend_prob, rng_);
      pending_.push_back({target, agent.current});
    }
  }
  events.sent = static_cast<std::uint32_t>(pending_.size());

  // Phase 2: delivery in sender order.
  for (const auto& d : pending_) agents_[d.target].inbox.push_back(d.value);
  events.delivered = static_cast<std::uint32_t>(pending_.size());

  // Phase 3: integration.
  for (auto& agent : agents_) {
    if (agent.inbox.size() < config_.v) continue;
    votes_.assign(agent.inbox.begin(), agent.inbox.begin() + config_.v);
    if (config_.include_self) votes_.push_back(agent.current);
    const VoteSet votes{votes_, agent.current};
    const Value next =
        integrate(config_.strategy, votes, config_.k, config_.mixed_consensus_prob, rng_);
    ++events.integrations;
    if (next != agent.current) ++events.changed;
    agent.current = next;
    agent.inbox.clear();
  }

  ++tick_;
  return events;
}

bool Simulation::absorbed() const {
  if (agents_.empty()) return true;
  const Value first = agents_.front().current;
  for (const auto& agent : agents_) {
    if (agent.current != first) return false;
    for (const Value x : agent.inbox) {
      if (x != first) return false;
    }
  }
  return true;
}

std::vector<Value> Simulation::values() const {
  std::vector<Value> out;
  out.reserve(agents_.size());
  for (const auto& agent : agents_) out.push_back(agent.current);
  return out;
}

std::uint64_t Trajectory::horizon() const {
  return absorbed ? std::max(config.max_ticks, ticks()) : ticks();
}

const std::vector<Value>& Trajectory::snapshot_at(std::uint64_t tick) const {
  if (snapshots.empty() || tick > horizon()) {
    throw std::out_of_range("tick " + std::to_string(tick) + " beyond trajectory horizon " +
                            std::to_string(horizon()));
  }
  return snapshots[std::min<std::uint64_t>(tick, ticks())];
}

Trajectory run(const SimConfig& config) { return run(Simulation(config)); }

Trajectory run(Simulation sim) {
  Trajectory traj;
  traj.config = sim.config();
  traj.graph = sim.graph();
  traj.snapshots.push_back(sim.values());
  while (sim.tick() < traj.config.max_ticks) {
    traj.events.push_back(sim.step());
    traj.snapshots.push_back(sim.values());
    if (sim.absorbed()) {
      traj.absorbed = true;
      break;
    }
  }
  return traj;
}

}  // namespace agentvote
