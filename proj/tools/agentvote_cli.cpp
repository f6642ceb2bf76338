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

// Command line front end. Talks to the library only through agentvote.h.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "agentvote/agentvote.h"

namespace {

int exit_code(av_status status) {
  switch (status) {
    case AV_OK:
      return 0;
    case AV_ERR_IO:
      return 2;
    default:
      return 1;
  }
}

int report(av_status status, char* text, bool quiet) {
  if (status != AV_OK) {
    std::cerr << "error: " << av_last_error() << '\n';
  } else if (text != nullptr && !quiet) {
    std::cout << text;
  }
  av_string_free(text);
  return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent voting simulator with preferential channels, and forecast replay"};
  app.require_subcommand(1);
  app.set_version_flag("--version", av_version());

  std::string scenario;
  std::string out_dir;
  std::string grid;
  std::string variants = "basic-dominant,centralized-consensus,decentralized-consensus,"
                         "decentralized-consensus-friends,dominant-decentralized,dominant-mixed";
  std::string predictions;
  std::string actuals;
  unsigned workers = 0;
  std::optional<std::uint64_t> seed;
  bool quiet = false;

  auto* simulate = app.add_subcommand("simulate", "Run every replication of a scenario");
  simulate->add_option("--scenario", scenario, "Scenario JSON file")->required();
  simulate->add_option("--out", out_dir, "Output directory")->required();
  simulate->add_option("--workers", workers, "Worker threads (0 = all cores)");
  simulate->add_option("--seed", seed, "Override the scenario's base seed");
  simulate->add_flag("--quiet", quiet, "Do not print the summary");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter grid over a base scenario");
  sweep->add_option("--scenario", scenario, "Base scenario JSON file")->required();
  sweep->add_option("--grid", grid, "Grid, e.g. \"v=3,20;friend_prob=0,0.4\"")->required();
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_option("--workers", workers, "Worker threads (0 = all cores)");
  sweep->add_option("--seed", seed, "Override the scenario's base seed");
  sweep->add_flag("--quiet", quiet, "Do not print the summary table");

  std::uint64_t forecast_seed = 1;
  auto* forecast = app.add_subcommand("forecast", "Evaluate integration variants on a dataset");
  forecast->add_option("--predictions", predictions, "CSV with day,source,prediction")
      ->required();
  forecast->add_option("--actuals", actuals, "CSV with day,actual")->required();
  forecast->add_option("--variants", variants, "Comma-separated variant list");
  forecast->add_option("--seed", forecast_seed, "Gossip seed");
  forecast->add_option("--out", out_dir, "Output directory")->required();
  forecast->add_flag("--quiet", quiet, "Do not print the report table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  char* text = nullptr;
  const std::uint64_t* seed_ptr = seed ? &*seed : nullptr;
  av_status status;
  if (*simulate) {
    status = av_simulate(scenario.c_str(), out_dir.c_str(), workers, seed_ptr, &text);
  } else if (*sweep) {
    status = av_sweep(scenario.c_str(), grid.c_str(), out_dir.c_str(), workers, seed_ptr, &text);
  } else {
    status = av_forecast(predictions.c_str(), actuals.c_str(), variants.c_str(), forecast_seed,
                         out_dir.c_str(), &text);
  }
  return report(status, text, quiet);
}
