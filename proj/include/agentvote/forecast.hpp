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

// Replay harness for a layered forecast system: source agents hold per-day
// predictions, optionally gossip with the voting protocol, and a supervisor
// integrates what they end up with into one forecast per day.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agentvote/core_model.hpp"

namespace agentvote::forecast {

struct ForecastDataset {
  std::vector<std::string> days;     // ascending
  std::vector<std::string> sources;  // order of first appearance
  // predictions[source][day]; absent when the source had no forecast that day.
  std::vector<std::vector<std::optional<Value>>> predictions;
  std::vector<Value> actuals;  // per day

  std::size_t prediction_count() const;
};

// Predictions CSV: `day,source,prediction`; actuals CSV: `day,actual`.
// Errors carry the file name and 1-based row number.
ForecastDataset load_dataset(const std::filesystem::path& predictions_csv,
                             const std::filesystem::path& actuals_csv);
ForecastDataset parse_dataset(std::string_view predictions_csv, std::string_view actuals_csv);

std::string predictions_csv(const ForecastDataset& data);
std::string actuals_csv(const ForecastDataset& data);

enum class Variant {
  kBasicDominant,
  kCentralizedConsensus,
  kDecentralizedConsensus,
  kDecentralizedConsensusFriends,
  kDominantDecentralized,
  kDominantMixed,
};

inline constexpr Variant kAllVariants[] = {
    Variant::kBasicDominant,          Variant::kCentralizedConsensus,
    Variant::kDecentralizedConsensus, Variant::kDecentralizedConsensusFriends,
    Variant::kDominantDecentralized,  Variant::kDominantMixed,
};

std::string_view variant_name(Variant v);
// Short row label in the report table, e.g. "Dom. Dec.".
std::string_view variant_label(Variant v);

struct GossipParams {
  std::uint32_t v = 3;
  std::uint32_t f = 15;
  double friend_prob = 0.4;
  std::uint64_t gossip_ticks = 50;
  Strategy strategy = Strategy::kDominant;
  double mixed_consensus_prob = 0.5;
  double activation_prob = 0.5;
  bool include_self = true;
};

struct VariantSpec {
  Variant variant = Variant::kBasicDominant;
  std::optional<GossipParams> gossip;  // empty for the centralized variants
  Strategy integration = Strategy::kDominant;
};

VariantSpec default_spec(Variant v);

// `name` or `name:key=value:key=value`, keys being the GossipParams fields.
VariantSpec parse_variant(std::string_view text);
std::vector<VariantSpec> parse_variant_list(std::string_view comma_separated);

// Final prediction per day. Days are independent; the gossip run of day i
// is seeded with seed + i and starts from that day's predictions shifted to
// [0, max - min]. Missing sources sit the day out.
std::vector<Value> run_variant(const ForecastDataset& data, const VariantSpec& spec,
                               std::uint64_t seed);

// Mean |prediction - actual| over days where a prediction is present.
double mae(std::span<const std::optional<Value>> predictions, std::span<const Value> actuals);
double mae(std::span<const Value> predictions, std::span<const Value> actuals);

std::vector<double> per_source_mae(const ForecastDataset& data);

struct Comparison {
  // comparator MAE / system MAE; empty when the system is perfect and the
  // comparator is not.
  std::optional<double> ratio;
  bool better = false;  // system beats the comparator
  std::string text;     // "89%", "17% better", "equal" or "system perfect"
};

struct EvalReport {
  double system_mae = 0.0;
  std::vector<double> per_source_mae;
  Comparison vs_best;
  Comparison vs_worst;
  Comparison vs_avg;
};

Comparison compare(double system_mae, double comparator_mae);
EvalReport compare_report(double system_mae, std::span<const double> per_source_mae);

struct VariantResult {
  VariantSpec spec;
  std::vector<Value> predictions;
  EvalReport report;
};

std::vector<VariantResult> evaluate(const ForecastDataset& data,
                                    std::span<const VariantSpec> specs, std::uint64_t seed);

std::string render_table(std::span<const VariantResult> results);
std::string render_json(const ForecastDataset& data, std::span<const VariantResult> results,
                        std::uint64_t seed);

// Synthetic dataset: integer actuals plus one source per bias, each source
// predicting actual + bias. Each source-day is dropped with dropout_prob,
// never leaving a day without sources.
ForecastDataset synthetic_dataset(std::size_t days, std::span<const Value> biases,
                                  double dropout_prob, std::uint64_t seed);

}  // namespace agentvote::forecast
