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

#include "agentvote/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "agentvote/metrics.hpp"
#include "text_format.hpp"

namespace agentvote {

using nlohmann::json;
using detail::format_fixed;

std::uint64_t Scenario::effective_burn_in() const {
  return burn_in.value_or(sim.max_ticks / 10);
}

std::pair<std::uint64_t, std::uint64_t> Scenario::effective_gap_window() const {
  return gap_window.value_or(std::pair{effective_burn_in(), sim.max_ticks});
}

std::vector<std::uint64_t> Scenario::replication_seeds() const {
  std::vector<std::uint64_t> seeds;
  seeds.reserve(replications);
  for (std::uint32_t i = 0; i < replications; ++i) seeds.push_back(sim.seed + i);
  return seeds;
}

namespace {

// Reads typed fields out of a JSON object, recording one message per bad or
// unknown field instead of stopping at the first.
class FieldReader {
 public:
  FieldReader(const json& obj, std::string prefix, std::vector<std::string>& errors)
      : obj_(obj), prefix_(std::move(prefix)), errors_(errors) {}

  template <typename T>
  void read(const char* key, T& out) {
    seen_.emplace_back(key);
    const auto it = obj_.find(key);
    if (it == obj_.end()) return;
    const auto& j = *it;
    if constexpr (std::is_same_v<T, bool>) {
      if (!j.is_boolean()) return fail(key, "expected a boolean");
      out = j.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!j.is_string()) return fail(key, "expected a string");
      out = j.get<std::string>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!j.is_number()) return fail(key, "expected a number");
      out = j.get<T>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!j.is_number_integer()) return fail(key, "expected an integer");
      if (std::is_unsigned_v<T> && !j.is_number_unsigned()) {
        return fail(key, "must be >= 0 (got " + j.dump() + ")");
      }
      if (j.is_number_unsigned()) {
        const auto u = j.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) {
          return fail(key, "out of range (got " + j.dump() + ")");
        }
        out = static_cast<T>(u);
      } else {
        const auto s = j.get<std::int64_t>();
        if (s < static_cast<std::int64_t>(std::numeric_limits<T>::min()) ||
            s > static_cast<std::int64_t>(std::numeric_limits<T>::max())) {
          return fail(key, "out of range (got " + j.dump() + ")");
        }
        out = static_cast<T>(s);
      }
    }
  }

  bool has(const char* key) const { return obj_.contains(key); }
  const json& at(const char* key) { seen_.emplace_back(key); return obj_.at(key); }

  void fail(const std::string& key, const std::string& msg) {
    errors_.push_back(prefix_ + key + ": " + msg);
  }

  void reject_unknown() {
    for (const auto& [key, value] : obj_.items()) {
      if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
        fail(key, "unknown field");
      }
    }
  }

 private:
  const json& obj_;
  std::string prefix_;
  std::vector<std::string>& errors_;
  std::vector<std::string> seen_;
};

[[noreturn]] void throw_errors(const std::vector<std::string>& errors) {
  std::ostringstream os;
  os << "invalid scenario";
  for (const auto& e : errors) os << "\n  " << e;
  throw ValidationError(os.str());
}

SimConfig parse_sim(const json& obj, std::vector<std::string>& errors) {
  SimConfig c;
  if (!obj.is_object()) {
    errors.push_back("sim: expected an object");
    return c;
  }
  FieldReader r(obj, "sim.", errors);
  r.read("n", c.n);
  r.read("k", c.k);
  r.read("v", c.v);
  r.read("f", c.f);
  r.read("friend_prob", c.friend_prob);
  r.read("activation_prob", c.activation_prob);
  std::string strategy(to_string(c.strategy));
  r.read("strategy", strategy);
  try {
    c.strategy = parse_strategy(strategy);
  } catch (const ValidationError& e) {
    errors.push_back(std::string("sim.") + e.what());
  }
  r.read("mixed_consensus_prob", c.mixed_consensus_prob);
  r.read("include_self", c.include_self);
  r.read("symmetric_friends", c.symmetric_friends);
  r.read("max_ticks", c.max_ticks);
  r.read("seed", c.seed);
  r.reject_unknown();
  return c;
}

json sim_json(const SimConfig& c) {
  return {{"n", c.n},
          {"k", c.k},
          {"v", c.v},
          {"f", c.f},
          {"friend_prob", c.friend_prob},
          {"activation_prob", c.activation_prob},
          {"strategy", to_string(c.strategy)},
          {"mixed_consensus_prob", c.mixed_consensus_prob},
          {"include_self", c.include_self},
          {"symmetric_friends", c.symmetric_friends},
          {"max_ticks", c.max_ticks},
          {"seed", c.seed}};
}

json scenario_json(const Scenario& s) {
  json outputs = json::array();
  if (s.outputs.trajectory) outputs.push_back("trajectory");
  if (s.outputs.metrics) outputs.push_back("metrics");
  if (s.outputs.summary) outputs.push_back("summary");
  json doc = {{"label", s.label},
              {"replications", s.replications},
              {"outputs", outputs},
              {"sim", sim_json(s.sim)}};
  if (s.burn_in) doc["burn_in"] = *s.burn_in;
  if (s.gap_window) doc["gap_window"] = {s.gap_window->first, s.gap_window->second};
  return doc;
}

}  // namespace

std::vector<std::string> scenario_errors(const Scenario& s) {
  std::vector<std::string> errors;
  for (auto& e : config_errors(s.sim)) errors.push_back("sim." + e);
  if (s.replications < 1) errors.emplace_back("replications: must be >= 1");
  if (s.sim.max_ticks >= 1 && s.effective_burn_in() >= s.sim.max_ticks) {
    errors.emplace_back("burn_in: must be below sim.max_ticks");
  }
  if (s.gap_window) {
    const auto [first, last] = *s.gap_window;
    if (first > last || last > s.sim.max_ticks) {
      errors.emplace_back("gap_window: need first <= last <= sim.max_ticks");
    }
  }
  return errors;
}

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("scenario: expected a JSON object");

  std::vector<std::string> errors;
  Scenario s;
  FieldReader r(doc, "", errors);
  r.read("label", s.label);
  r.read("replications", s.replications);
  if (r.has("sim")) {
    s.sim = parse_sim(r.at("sim"), errors);
  } else {
    errors.emplace_back("sim: missing");
  }
  if (r.has("outputs")) {
    const auto& outs = r.at("outputs");
    s.outputs = {false, false, false};
    if (!outs.is_array()) {
      errors.emplace_back("outputs: expected an array");
    } else {
      for (const auto& o : outs) {
        const auto name = o.is_string() ? o.get<std::string>() : o.dump();
        if (name == "trajectory") {
          s.outputs.trajectory = true;
        } else if (name == "metrics") {
          s.outputs.metrics = true;
        } else if (name == "summary") {
          s.outputs.summary = true;
        } else {
          errors.push_back("outputs: unknown artifact " + name);
        }
      }
    }
  }
  if (r.has("burn_in")) {
    std::uint64_t b = 0;
    r.read("burn_in", b);
    s.burn_in = b;
  }
  if (r.has("gap_window")) {
    const auto& w = r.at("gap_window");
    if (w.is_array() && w.size() == 2 && w[0].is_number_unsigned() && w[1].is_number_unsigned()) {
      s.gap_window = std::pair{w[0].get<std::uint64_t>(), w[1].get<std::uint64_t>()};
    } else {
      errors.emplace_back("gap_window: expected [first, last] tick indices");
    }
  }
  r.reject_unknown();
  if (errors.empty()) errors = scenario_errors(s);
  if (!errors.empty()) throw_errors(errors);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_scenario(os.str());
}

std::string serialize_scenario(const Scenario& scenario) {
  return scenario_json(scenario).dump(2) + "\n";
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "tick,value,count\n";
  const auto k = static_cast<std::size_t>(traj.config.k);
  std::vector<std::uint32_t> hist(k + 1);
  for (std::size_t t = 0; t < traj.snapshots.size(); ++t) {
    std::fill(hist.begin(), hist.end(), 0);
    for (const Value x : traj.snapshots[t]) ++hist[static_cast<std::size_t>(x)];
    for (std::size_t x = 0; x <= k; ++x) {
      out += std::to_string(t);
      out += ',';
      out += std::to_string(x);
      out += ',';
      out += std::to_string(hist[x]);
      out += '\n';
    }
  }
  return out;
}

std::string metrics_csv(const Trajectory& traj) {
  std::string out = "tick,winning_count,change_rate,friend_agreement,random_agreement\n";
  const auto metrics = trajectory_metrics(traj);
  for (std::size_t t = 0; t < metrics.size(); ++t) {
    const auto& m = metrics[t];
    out += std::to_string(t) + ',' + std::to_string(m.winning_count) + ',' +
           format_fixed(m.change_rate) + ',' + format_fixed(m.friend_agreement) + ',' +
           format_fixed(m.random_agreement) + '\n';
  }
  return out;
}

ReplicationSummary summarize(const Scenario& scenario, const Trajectory& traj) {
  ReplicationSummary s;
  s.seed = traj.config.seed;
  s.ticks = traj.ticks();
  s.steady_change_rate = steady_change_rate(traj, scenario.effective_burn_in());
  s.convergence_tick = convergence_tick(traj);
  s.final_winning_count = final_winning_count(traj);
  const auto [first, last] = scenario.effective_gap_window();
  s.mean_clustering_gap = mean_clustering_gap(traj, first, last);
  return s;
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& job) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  std::vector<std::exception_ptr> failures(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        job(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            job(i);
          } catch (...) {
            failures[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

std::vector<ReplicationSummary> run_replications(
    const Scenario& scenario, unsigned workers,
    const std::function<void(std::size_t, const Trajectory&)>& on_trajectory) {
  const auto errors = scenario_errors(scenario);
  if (!errors.empty()) throw_errors(errors);
  const auto seeds = scenario.replication_seeds();
  std::vector<ReplicationSummary> out(seeds.size());
  parallel_for(seeds.size(), workers, [&](std::size_t i) {
    SimConfig config = scenario.sim;
    config.seed = seeds[i];
    const Trajectory traj = run(config);
    out[i] = summarize(scenario, traj);
    if (on_trajectory) on_trajectory(i, traj);
  });
  return out;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string() +
                  (ec ? ": " + ec.message() : std::string()));
  }
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

namespace {

json optional_json(const std::optional<std::uint64_t>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

std::string simulate(const Scenario& scenario, const std::filesystem::path& out_dir,
                     unsigned workers) {
  ensure_directory(out_dir);
  const auto runs = run_replications(scenario, workers, [&](std::size_t, const Trajectory& t) {
    const std::string stem = "seed_" + std::to_string(t.config.seed);
    if (scenario.outputs.trajectory) write_file(out_dir / (stem + "_trajectory.csv"), trajectory_csv(t));
    if (scenario.outputs.metrics) write_file(out_dir / (stem + "_metrics.csv"), metrics_csv(t));
  });

  json reps = json::array();
  for (const auto& r : runs) {
    reps.push_back({{"seed", r.seed},
                    {"ticks", r.ticks},
                    {"steady_change_rate", r.steady_change_rate},
                    {"convergence_tick", optional_json(r.convergence_tick)},
                    {"final_winning_count", r.final_winning_count},
                    {"mean_clustering_gap", r.mean_clustering_gap}});
  }
  const auto [first, last] = scenario.effective_gap_window();
  json doc = {{"label", scenario.label},
              {"scenario", scenario_json(scenario)},
              {"burn_in", scenario.effective_burn_in()},
              {"gap_window", {first, last}},
              {"replications", reps}};
  const std::string text = doc.dump(2) + "\n";
  if (scenario.outputs.summary) write_file(out_dir / "summary.json", text);
  return text;
}

namespace {

constexpr std::string_view kGridParams[] = {"n", "k", "v", "f", "friend_prob"};

void apply_cell(SimConfig& c, const std::string& param, double value) {
  if (param == "friend_prob") {
    c.friend_prob = value;
    return;
  }
  if (value != std::floor(value) || value < 0 || value > 4.0e9) {
    throw ValidationError(param + ": expected a non-negative integer (got " +
                          format_fixed(value, 3) + ")");
  }
  const auto u = static_cast<std::uint32_t>(value);
  if (param == "n") c.n = u;
  if (param == "k") c.k = static_cast<Value>(u);
  if (param == "v") c.v = u;
  if (param == "f") c.f = u;
}

double sample_std(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (const double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::vector<GridAxis> parse_grid(std::string_view spec) {
  std::vector<GridAxis> grid;
  for (const auto part : detail::split(spec, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("grid: '" + std::string(part) + "' lacks '='");
    }
    GridAxis axis{std::string(detail::trim(part.substr(0, eq))), {}};
    if (std::find(std::begin(kGridParams), std::end(kGridParams), axis.param) ==
        std::end(kGridParams)) {
      throw ValidationError("grid: unknown parameter '" + axis.param +
                            "' (expected n, k, v, f or friend_prob)");
    }
    for (const auto item : detail::split(part.substr(eq + 1), ',')) {
      double x = 0.0;
      if (!detail::parse_number(item, x)) {
        throw ValidationError("grid: " + axis.param + " value '" + std::string(item) +
                              "' is not a number");
      }
      axis.values.push_back(x);
    }
    if (std::any_of(grid.begin(), grid.end(), [&](const auto& a) { return a.param == axis.param; })) {
      throw ValidationError("grid: parameter " + axis.param + " listed twice");
    }
    grid.push_back(std::move(axis));
  }
  if (grid.empty()) throw ValidationError("grid: empty");
  return grid;
}

std::vector<SweepRow> sweep(const Scenario& base, std::span<const GridAxis> grid,
                            unsigned workers) {
  if (grid.empty()) throw ValidationError("grid: empty");
  std::size_t cells = 1;
  for (const auto& axis : grid) {
    if (axis.values.empty()) throw ValidationError("grid: no values for " + axis.param);
    cells *= axis.values.size();
  }

  // Cross product, first axis outermost.
  std::vector<SweepRow> rows(cells);
  std::vector<Scenario> scenarios(cells, base);
  for (std::size_t i = 0; i < cells; ++i) {
    std::size_t rest = i;
    std::size_t stride = cells;
    for (const auto& axis : grid) {
      stride /= axis.values.size();
      const double value = axis.values[rest / stride];
      rest %= stride;
      rows[i].cell.emplace_back(axis.param, value);
      try {
        apply_cell(scenarios[i].sim, axis.param, value);
      } catch (const ValidationError& e) {
        rows[i].skipped = e.what();
      }
    }
    rows[i].config = scenarios[i].sim;
    if (!rows[i].skipped) {
      const auto errors = scenario_errors(scenarios[i]);
      if (!errors.empty()) {
        std::string why;
        for (const auto& e : errors) why += (why.empty() ? "" : "; ") + e;
        rows[i].skipped = why;
      }
    }
  }

  // One job per (cell, replication), reduced in fixed order afterwards.
  std::vector<std::pair<std::size_t, std::uint32_t>> jobs;
  for (std::size_t i = 0; i < cells; ++i) {
    if (rows[i].skipped) continue;
    for (std::uint32_t r = 0; r < base.replications; ++r) jobs.emplace_back(i, r);
  }
  std::vector<ReplicationSummary> results(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t j) {
    const auto [cell, rep] = jobs[j];
    SimConfig config = scenarios[cell].sim;
    config.seed = base.sim.seed + rep;
    results[j] = summarize(scenarios[cell], run(config));
  });

  for (std::size_t i = 0, j = 0; i < cells; ++i) {
    auto& row = rows[i];
    if (row.skipped) continue;
    std::vector<double> rates;
    double gap = 0.0;
    std::uint32_t converged = 0;
    for (std::uint32_t r = 0; r < base.replications; ++r, ++j) {
      rates.push_back(results[j].steady_change_rate);
      gap += results[j].mean_clustering_gap;
      converged += results[j].convergence_tick ? 1 : 0;
    }
    const double reps = static_cast<double>(base.replications);
    row.replications = base.replications;
    row.mean_change_rate = std::accumulate(rates.begin(), rates.end(), 0.0) / reps;
    row.std_change_rate = sample_std(rates, row.mean_change_rate);
    row.convergence_fraction = converged / reps;
    row.mean_clustering_gap = gap / reps;
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out =
      "n,k,v,f,friend_prob,replications,mean_change_rate,std_change_rate,convergence_fraction,"
      "mean_clustering_gap,skipped\n";
  for (const auto& r : rows) {
    const auto& c = r.config;
    out += std::to_string(c.n) + ',' + std::to_string(c.k) + ',' + std::to_string(c.v) + ',' +
           std::to_string(c.f) + ',' + format_fixed(c.friend_prob, 4) + ',' +
           std::to_string(r.replications) + ',';
    if (r.skipped) {
      out += ",,,,1\n";
    } else {
      out += format_fixed(r.mean_change_rate) + ',' + format_fixed(r.std_change_rate) + ',' +
             format_fixed(r.convergence_fraction) + ',' + format_fixed(r.mean_clustering_gap) +
             ",0\n";
    }
  }
  return out;
}

std::string sweep_to_dir(const Scenario& base, std::span<const GridAxis> grid,
                         const std::filesystem::path& out_dir, unsigned workers) {
  ensure_directory(out_dir);
  const auto rows = sweep(base, grid, workers);
  const auto csv = sweep_csv(rows);
  write_file(out_dir / "sweep.csv", csv);

  json cells = json::array();
  for (const auto& r : rows) {
    json cell = json::object();
    for (const auto& [param, value] : r.cell) cell[param] = value;
    json entry = {{"cell", cell}, {"config", sim_json(r.config)}};
    if (r.skipped) {
      entry["skipped"] = *r.skipped;
    } else {
      entry["replications"] = r.replications;
      entry["mean_change_rate"] = r.mean_change_rate;
      entry["std_change_rate"] = r.std_change_rate;
      entry["convergence_fraction"] = r.convergence_fraction;
      entry["mean_clustering_gap"] = r.mean_clustering_gap;
    }
    cells.push_back(entry);
  }
  json doc = {{"base", scenario_json(base)}, {"cells", cells}};
  write_file(out_dir / "sweep.json", doc.dump(2) + "\n");
  return csv;
}

}  // namespace agentvote
