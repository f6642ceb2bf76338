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

// Scenario files, serialization of runs, and the multi-seed batch runner
// behind `simulate` and `sweep`.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agentvote/core_model.hpp"
#include "agentvote/engine.hpp"

namespace agentvote {

struct OutputSelection {
  bool trajectory = true;
  bool metrics = true;
  bool summary = true;

  bool operator==(const OutputSelection&) const = default;
};

struct Scenario {
  std::string label;
  SimConfig sim;
  std::uint32_t replications = 1;
  OutputSelection outputs;
  // Defaults to max_ticks / 10.
  std::optional<std::uint64_t> burn_in;
  // Inclusive tick window for averaged clustering gaps; defaults to
  // [burn_in, max_ticks].
  std::optional<std::pair<std::uint64_t, std::uint64_t>> gap_window;

  std::uint64_t effective_burn_in() const;
  std::pair<std::uint64_t, std::uint64_t> effective_gap_window() const;
  // seed, seed + 1, ..., seed + replications - 1
  std::vector<std::uint64_t> replication_seeds() const;

  bool operator==(const Scenario&) const = default;
};

// JSON scenario document. Throws ValidationError listing every bad field.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const Scenario& scenario);
// Field-level problems beyond SimConfig's own, e.g. burn_in past max_ticks.
std::vector<std::string> scenario_errors(const Scenario& scenario);

// Long form `tick,value,count`, one row per tick and value in [0, k].
std::string trajectory_csv(const Trajectory& traj);
// `tick,winning_count,change_rate,friend_agreement,random_agreement`
std::string metrics_csv(const Trajectory& traj);

struct ReplicationSummary {
  std::uint64_t seed = 0;
  std::uint64_t ticks = 0;
  double steady_change_rate = 0.0;
  std::optional<std::uint64_t> convergence_tick;
  std::uint32_t final_winning_count = 0;
  double mean_clustering_gap = 0.0;
};

ReplicationSummary summarize(const Scenario& scenario, const Trajectory& traj);

// Runs `count` jobs on up to `workers` threads (0 = hardware concurrency).
// If jobs throw, the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& job);

// Every replication of a scenario, in seed order.
std::vector<ReplicationSummary> run_replications(
    const Scenario& scenario, unsigned workers,
    const std::function<void(std::size_t, const Trajectory&)>& on_trajectory = {});

// Writes the requested per-replication CSVs and summary.json into out_dir.
// Returns the summary document.
std::string simulate(const Scenario& scenario, const std::filesystem::path& out_dir,
                     unsigned workers);

struct GridAxis {
  std::string param;  // n, k, v, f or friend_prob
  std::vector<double> values;
};

// "v=3,20;friend_prob=0,0.4"
std::vector<GridAxis> parse_grid(std::string_view spec);

struct SweepRow {
  SimConfig config;
  std::vector<std::pair<std::string, double>> cell;
  std::optional<std::string> skipped;  // why the cell was not run
  std::uint32_t replications = 0;
  double mean_change_rate = 0.0;
  double std_change_rate = 0.0;
  double convergence_fraction = 0.0;
  double mean_clustering_gap = 0.0;
};

std::vector<SweepRow> sweep(const Scenario& base, std::span<const GridAxis> grid,
                            unsigned workers);
std::string sweep_csv(std::span<const SweepRow> rows);
// Writes sweep.csv and sweep.json; returns the CSV.
std::string sweep_to_dir(const Scenario& base, std::span<const GridAxis> grid,
                         const std::filesystem::path& out_dir, unsigned workers);

void write_file(const std::filesystem::path& path, std::string_view contents);
void ensure_directory(const std::filesystem::path& dir);

}  // namespace agentvote
