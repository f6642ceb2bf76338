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

#include "agentvote/agentvote.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "agentvote/engine.hpp"
#include "agentvote/forecast.hpp"
#include "agentvote/integration.hpp"
#include "agentvote/scenario.hpp"

struct av_sim {
  agentvote::Simulation sim;
};

namespace {

thread_local std::string g_last_error;

av_status fail(av_status status, std::string msg) {
  g_last_error = std::move(msg);
  return status;
}

// Maps exceptions escaping `body` onto status codes.
template <typename F>
av_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return AV_OK;
  } catch (const agentvote::ValidationError& e) {
    return fail(AV_ERR_VALIDATION, e.what());
  } catch (const agentvote::IoError& e) {
    return fail(AV_ERR_IO, e.what());
  } catch (const std::out_of_range& e) {
    return fail(AV_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AV_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void hand_out(char** dst, const std::string& s) {
  if (dst != nullptr) *dst = dup_string(s);
}

agentvote::SimConfig config_from_json(const char* config_json) {
  const std::string doc = std::string(R"({"sim":)") + config_json + "}";
  return agentvote::parse_scenario(doc).sim;
}

}  // namespace

extern "C" {

const char* av_version(void) { return "1.0.0"; }

const char* av_last_error(void) { return g_last_error.c_str(); }

void av_string_free(char* s) { std::free(s); }

av_status av_dominant_value(const int32_t* values, size_t count, int32_t own, int has_own,
                            int32_t* out) {
  if ((values == nullptr && count > 0) || out == nullptr) {
    return fail(AV_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guarded([&] {
    const agentvote::VoteSet votes{{values, count},
                                   has_own ? std::optional<int32_t>(own) : std::nullopt};
    *out = agentvote::dominant_value(votes);
  });
}

av_status av_consensus_value(const int32_t* values, size_t count, int32_t k, int32_t* out) {
  if ((values == nullptr && count > 0) || out == nullptr) {
    return fail(AV_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guarded([&] {
    *out = agentvote::consensus_value({{values, count}, std::nullopt}, k);
  });
}

av_status av_sim_create(const char* config_json, av_sim** out) {
  if (config_json == nullptr || out == nullptr) {
    return fail(AV_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  *out = nullptr;
  return guarded([&] { *out = new av_sim{agentvote::Simulation(config_from_json(config_json))}; });
}

void av_sim_destroy(av_sim* sim) { delete sim; }

av_status av_sim_step(av_sim* sim, av_tick_events* events) {
  if (sim == nullptr) return fail(AV_ERR_INVALID_ARGUMENT, "null simulation handle");
  return guarded([&] {
    const auto e = sim->sim.step();
    if (events != nullptr) *events = {e.sent, e.delivered, e.integrations, e.changed};
  });
}

av_status av_sim_values(const av_sim* sim, int32_t* values, size_t capacity, size_t* count) {
  if (sim == nullptr) return fail(AV_ERR_INVALID_ARGUMENT, "null simulation handle");
  if (values == nullptr && capacity > 0) {
    return fail(AV_ERR_INVALID_ARGUMENT, "null value buffer");
  }
  return guarded([&] {
    const auto agents = sim->sim.agents();
    if (count != nullptr) *count = agents.size();
    for (size_t i = 0; i < agents.size() && i < capacity; ++i) values[i] = agents[i].current;
  });
}

av_status av_sim_inject(av_sim* sim, const int32_t* values, size_t count) {
  if (sim == nullptr || (values == nullptr && count > 0)) {
    return fail(AV_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guarded([&] { sim->sim.inject({values, count}); });
}

uint64_t av_sim_tick(const av_sim* sim) { return sim == nullptr ? 0 : sim->sim.tick(); }

int av_sim_absorbed(const av_sim* sim) { return sim != nullptr && sim->sim.absorbed() ? 1 : 0; }

av_status av_run_trajectory_csv(const char* config_json, char** csv) {
  if (config_json == nullptr || csv == nullptr) {
    return fail(AV_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guarded([&] {
    hand_out(csv, agentvote::trajectory_csv(agentvote::run(config_from_json(config_json))));
  });
}

av_status av_simulate(const char* scenario_path, const char* out_dir, unsigned workers,
                      const uint64_t* seed_override, char** summary) {
  if (scenario_path == nullptr || out_dir == nullptr) {
    return fail(AV_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guarded([&] {
    auto scenario = agentvote::load_scenario(scenario_path);
    if (seed_override != nullptr) scenario.sim.seed = *seed_override;
    hand_out(summary, agentvote::simulate(scenario, out_dir, workers));
  });
}

av_status av_sweep(const char* scenario_path, const char* grid, const char* out_dir,
                   unsigned workers, const uint64_t* seed_override, char** summary) {
  if (scenario_path == nullptr || grid == nullptr || out_dir == nullptr) {
    return fail(AV_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guarded([&] {
    auto scenario = agentvote::load_scenario(scenario_path);
    if (seed_override != nullptr) scenario.sim.seed = *seed_override;
    const auto axes = agentvote::parse_grid(grid);
    hand_out(summary, agentvote::sweep_to_dir(scenario, axes, out_dir, workers));
  });
}

av_status av_forecast(const char* predictions_csv, const char* actuals_csv, const char* variants,
                      uint64_t seed, const char* out_dir, char** summary) {
  if (predictions_csv == nullptr || actuals_csv == nullptr || variants == nullptr ||
      out_dir == nullptr) {
    return fail(AV_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guarded([&] {
    namespace fc = agentvote::forecast;
    const auto specs = fc::parse_variant_list(variants);
    const auto data = fc::load_dataset(predictions_csv, actuals_csv);
    const auto results = fc::evaluate(data, specs, seed);

    const std::filesystem::path dir(out_dir);
    agentvote::ensure_directory(dir);
    const auto table = fc::render_table(results);
    agentvote::write_file(dir / "report.txt", table);
    agentvote::write_file(dir / "report.json", fc::render_json(data, results, seed));
    std::string per_day = "day,variant,prediction,actual\n";
    for (const auto& r : results) {
      for (size_t d = 0; d < data.days.size(); ++d) {
        per_day += data.days[d] + ',' + std::string(fc::variant_name(r.spec.variant)) + ',' +
                   std::to_string(r.predictions[d]) + ',' + std::to_string(data.actuals[d]) +
                   '\n';
      }
    }
    agentvote::write_file(dir / "predictions.csv", per_day);
    hand_out(summary, table);
  });
}

av_status av_scenario_normalize(const char* scenario_path, char** json) {
  if (scenario_path == nullptr || json == nullptr) {
    return fail(AV_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guarded([&] {
    hand_out(json, agentvote::serialize_scenario(agentvote::load_scenario(scenario_path)));
  });
}

}  // extern "C"
