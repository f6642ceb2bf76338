/*
 * Copyright 2026 The agentvote Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libagentvote.
 *
 * Every fallible call returns an av_status. On failure a description is
 * available from av_last_error() on the same thread until the next call.
 * Strings handed out through `char**` parameters are owned by the caller and
 * must be released with av_string_free().
 */

#ifndef AGENTVOTE_AGENTVOTE_H_
#define AGENTVOTE_AGENTVOTE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AV_API __declspec(dllexport)
#else
#define AV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes for the first three. */
typedef enum av_status {
  AV_OK = 0,
  AV_ERR_VALIDATION = 1,
  AV_ERR_IO = 2,
  AV_ERR_INVALID_ARGUMENT = 3,
  AV_ERR_INTERNAL = 4
} av_status;

typedef struct av_sim av_sim;

typedef struct av_tick_events {
  uint32_t sent;
  uint32_t delivered;
  uint32_t integrations;
  uint32_t changed;
} av_tick_events;

AV_API const char* av_version(void);
AV_API const char* av_last_error(void);
AV_API void av_string_free(char* s);

/* Integration operators. has_own = 0 means the voter has no own value. */
AV_API av_status av_dominant_value(const int32_t* values, size_t count, int32_t own,
                                   int has_own, int32_t* out);
AV_API av_status av_consensus_value(const int32_t* values, size_t count, int32_t k,
                                    int32_t* out);

/*
 * Simulation handle. config_json is the "sim" object of a scenario file;
 * absent fields take their defaults.
 */
AV_API av_status av_sim_create(const char* config_json, av_sim** out);
AV_API void av_sim_destroy(av_sim* sim);
AV_API av_status av_sim_step(av_sim* sim, av_tick_events* events);
/* Writes up to capacity values; *count receives the population size. */
AV_API av_status av_sim_values(const av_sim* sim, int32_t* values, size_t capacity,
                               size_t* count);
/* Overwrites all values and empties every inbox. */
AV_API av_status av_sim_inject(av_sim* sim, const int32_t* values, size_t count);
AV_API uint64_t av_sim_tick(const av_sim* sim);
AV_API int av_sim_absorbed(const av_sim* sim);

/* Full run of one config; *csv receives the `tick,value,count` trajectory. */
AV_API av_status av_run_trajectory_csv(const char* config_json, char** csv);

/*
 * Batch entry points behind the command line tool. seed_override may be
 * NULL. workers = 0 uses the hardware concurrency. *summary (may be NULL)
 * receives the summary JSON for simulate, the sweep CSV for sweep, and the
 * report table for forecast.
 */
AV_API av_status av_simulate(const char* scenario_path, const char* out_dir, unsigned workers,
                             const uint64_t* seed_override, char** summary);
AV_API av_status av_sweep(const char* scenario_path, const char* grid, const char* out_dir,
                          unsigned workers, const uint64_t* seed_override, char** summary);
AV_API av_status av_forecast(const char* predictions_csv, const char* actuals_csv,
                             const char* variants, uint64_t seed, const char* out_dir,
                             char** summary);

/* Parses and re-serializes a scenario file (canonical JSON). */
AV_API av_status av_scenario_normalize(const char* scenario_path, char** json);

#ifdef __cplusplus
}
#endif

#endif /* AGENTVOTE_AGENTVOTE_H_ */
