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

#include "agentvote/forecast.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "agentvote/engine.hpp"
#include "agentvote/integration.hpp"
#include "text_format.hpp"

namespace agentvote::forecast {

using detail::format_fixed;
using detail::parse_number;
using detail::split;
using detail::trim;

std::size_t ForecastDataset::prediction_count() const {
  std::size_t total = 0;
  for (const auto& row : predictions) {
    total += static_cast<std::size_t>(
        std::count_if(row.begin(), row.end(), [](const auto& p) { return p.has_value(); }));
  }
  return total;
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool is_iso_day(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == 4 || i == 7) continue;
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

struct Row {
  std::size_t line;
  std::vector<std::string_view> fields;
};

// Data rows after a mandatory header; blank lines are skipped.
std::vector<Row> read_rows(std::string_view text, std::string_view file,
                           std::string_view expected_header) {
  std::vector<Row> rows;
  bool header_seen = false;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != expected_header) {
        throw ValidationError(std::string(file) + " row " + std::to_string(line_no) +
                              ": expected header '" + std::string(expected_header) + "'");
      }
      header_seen = true;
      continue;
    }
    rows.push_back({line_no, split(line, ',')});
  }
  if (!header_seen) throw ValidationError(std::string(file) + ": missing header");
  return rows;
}

[[noreturn]] void row_error(std::string_view file, std::size_t line, const std::string& msg) {
  throw ValidationError(std::string(file) + " row " + std::to_string(line) + ": " + msg);
}

}  // namespace

ForecastDataset parse_dataset(std::string_view predictions_text, std::string_view actuals_text) {
  constexpr std::string_view kPred = "predictions";
  constexpr std::string_view kAct = "actuals";

  std::map<std::string, Value, std::less<>> actual_by_day;
  for (const auto& row : read_rows(actuals_text, kAct, "day,actual")) {
    if (row.fields.size() != 2) row_error(kAct, row.line, "expected 2 fields");
    const auto day = row.fields[0];
    if (!is_iso_day(day)) row_error(kAct, row.line, "day '" + std::string(day) + "' is not YYYY-MM-DD");
    Value actual = 0;
    if (!parse_number(row.fields[1], actual)) {
      row_error(kAct, row.line, "actual '" + std::string(row.fields[1]) + "' is not an integer");
    }
    if (!actual_by_day.emplace(std::string(day), actual).second) {
      row_error(kAct, row.line, "duplicate actual for day " + std::string(day));
    }
  }

  struct Cell {
    std::string day;
    std::size_t source;
    Value value;
  };
  std::vector<Cell> cells;
  std::vector<std::string> sources;
  std::map<std::string, std::size_t, std::less<>> source_index;
  std::map<std::pair<std::size_t, std::string>, std::size_t> seen;
  for (const auto& row : read_rows(predictions_text, kPred, "day,source,prediction")) {
    if (row.fields.size() != 3) row_error(kPred, row.line, "expected 3 fields");
    const auto day = row.fields[0];
    const auto source = row.fields[1];
    if (!is_iso_day(day)) row_error(kPred, row.line, "day '" + std::string(day) + "' is not YYYY-MM-DD");
    if (source.empty()) row_error(kPred, row.line, "empty source name");
    Value value = 0;
    if (!parse_number(row.fields[2], value)) {
      row_error(kPred, row.line,
                "prediction '" + std::string(row.fields[2]) + "' is not an integer");
    }
    if (!actual_by_day.contains(day)) {
      row_error(kPred, row.line, "day " + std::string(day) + " has no actual value");
    }
    auto [it, inserted] = source_index.try_emplace(std::string(source), sources.size());
    if (inserted) sources.emplace_back(source);
    auto [dup, fresh] = seen.try_emplace({it->second, std::string(day)}, row.line);
    if (!fresh) {
      row_error(kPred, row.line,
                "duplicate prediction for source " + std::string(source) + " on day " +
                    std::string(day) + " (first at row " + std::to_string(dup->second) + ")");
    }
    cells.push_back({std::string(day), it->second, value});
  }

  ForecastDataset data;
  std::map<std::string_view, std::size_t> day_index;
  for (const auto& [day, actual] : actual_by_day) {
    day_index.emplace(day, data.days.size());
    data.days.push_back(day);
    data.actuals.push_back(actual);
  }
  data.sources = std::move(sources);
  data.predictions.assign(data.sources.size(),
                          std::vector<std::optional<Value>>(data.days.size()));
  for (const auto& c : cells) data.predictions[c.source][day_index.at(c.day)] = c.value;
  return data;
}

ForecastDataset load_dataset(const std::filesystem::path& predictions_path,
                             const std::filesystem::path& actuals_path) {
  const auto pred = slurp(predictions_path);
  const auto act = slurp(actuals_path);
  try {
    return parse_dataset(pred, act);
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    if (msg.starts_with("predictions")) msg = predictions_path.string() + msg.substr(11);
    if (msg.starts_with("actuals")) msg = actuals_path.string() + msg.substr(7);
    throw ValidationError(msg);
  }
}

std::string predictions_csv(const ForecastDataset& data) {
  std::ostringstream os;
  os << "day,source,prediction\n";
  // Source-major, so reloading preserves source order.
  for (std::size_t s = 0; s < data.sources.size(); ++s) {
    for (std::size_t d = 0; d < data.days.size(); ++d) {
      if (const auto& p = data.predictions[s][d]) {
        os << data.days[d] << ',' << data.sources[s] << ',' << *p << '\n';
      }
    }
  }
  return os.str();
}

std::string actuals_csv(const ForecastDataset& data) {
  std::ostringstream os;
  os << "day,actual\n";
  for (std::size_t d = 0; d < data.days.size(); ++d) {
    os << data.days[d] << ',' << data.actuals[d] << '\n';
  }
  return os.str();
}

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kBasicDominant:
      return "basic-dominant";
    case Variant::kCentralizedConsensus:
      return "centralized-consensus";
    case Variant::kDecentralizedConsensus:
      return "decentralized-consensus";
    case Variant::kDecentralizedConsensusFriends:
      return "decentralized-consensus-friends";
    case Variant::kDominantDecentralized:
      return "dominant-decentralized";
    case Variant::kDominantMixed:
      return "dominant-mixed";
  }
  return "unknown";
}

std::string_view variant_label(Variant v) {
  switch (v) {
    case Variant::kBasicDominant:
      return "B. Dominant";
    case Variant::kCentralizedConsensus:
      return "Cen. Cons.";
    case Variant::kDecentralizedConsensus:
      return "Dec. Cons.";
    case Variant::kDecentralizedConsensusFriends:
      return "D.-S. Cons.";
    case Variant::kDominantDecentralized:
      return "Dom. Dec.";
    case Variant::kDominantMixed:
      return "Dom. Mix.";
  }
  return "unknown";
}

VariantSpec default_spec(Variant v) {
  VariantSpec spec{v, std::nullopt, Strategy::kDominant};
  GossipParams g;
  switch (v) {
    case Variant::kBasicDominant:
      break;
    case Variant::kCentralizedConsensus:
      spec.integration = Strategy::kConsensus;
      break;
    case Variant::kDecentralizedConsensus:
      g.f = 0;
      g.friend_prob = 0.0;
      g.strategy = Strategy::kConsensus;
      spec.gossip = g;
      spec.integration = Strategy::kConsensus;
      break;
    case Variant::kDecentralizedConsensusFriends:
      g.strategy = Strategy::kConsensus;
      spec.gossip = g;
      spec.integration = Strategy::kConsensus;
      break;
    case Variant::kDominantDecentralized:
      spec.gossip = g;
      break;
    case Variant::kDominantMixed:
      g.strategy = Strategy::kMixed;
      g.mixed_consensus_prob = 0.5;
      spec.gossip = g;
      break;
  }
  return spec;
}

VariantSpec parse_variant(std::string_view text) {
  const auto parts = split(text, ':');
  std::optional<Variant> variant;
  for (const Variant v : kAllVariants) {
    if (variant_name(v) == parts.front()) variant = v;
  }
  if (!variant) throw ValidationError("unknown variant '" + std::string(parts.front()) + "'");
  VariantSpec spec = default_spec(*variant);
  if (parts.size() > 1 && !spec.gossip) {
    throw ValidationError("variant " + std::string(parts.front()) +
                          " takes no gossip parameters");
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("variant parameter '" + std::string(parts[i]) + "' lacks '='");
    }
    const auto key = trim(parts[i].substr(0, eq));
    const auto value = trim(parts[i].substr(eq + 1));
    auto& g = *spec.gossip;
    bool ok = true;
    if (key == "v") {
      ok = parse_number(value, g.v);
    } else if (key == "f") {
      ok = parse_number(value, g.f);
    } else if (key == "friend_prob") {
      ok = parse_number(value, g.friend_prob);
    } else if (key == "gossip_ticks") {
      ok = parse_number(value, g.gossip_ticks);
    } else if (key == "strategy") {
      g.strategy = parse_strategy(value);
    } else if (key == "mixed_consensus_prob") {
      ok = parse_number(value, g.mixed_consensus_prob);
    } else if (key == "activation_prob") {
      ok = parse_number(value, g.activation_prob);
    } else {
      throw ValidationError("unknown variant parameter '" + std::string(key) + "'");
    }
    if (!ok) {
      throw ValidationError("variant parameter " + std::string(key) + ": cannot parse '" +
                            std::string(value) + "'");
    }
  }
  return spec;
}

std::vector<VariantSpec> parse_variant_list(std::string_view comma_separated) {
  std::vector<VariantSpec> specs;
  for (const auto item : split(comma_separated, ',')) {
    if (item.empty()) continue;
    specs.push_back(parse_variant(item));
  }
  if (specs.empty()) throw ValidationError("variants: empty list");
  return specs;
}

namespace {

std::vector<Value> gossip(std::vector<Value> values, const GossipParams& g, std::uint64_t seed) {
  if (g.gossip_ticks == 0 || values.size() < 2) return values;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const Value offset = *lo;
  const Value k = *hi - *lo;
  for (auto& x : values) x -= offset;

  SimConfig config;
  config.n = static_cast<std::uint32_t>(values.size());
  config.k = k;
  config.v = g.v;
  config.f = std::min(g.f, config.n - 1);
  config.friend_prob = config.f == 0 ? 0.0 : g.friend_prob;
  config.activation_prob = g.activation_prob;
  config.strategy = g.strategy;
  config.mixed_consensus_prob = g.mixed_consensus_prob;
  config.include_self = g.include_self;
  config.max_ticks = g.gossip_ticks;
  config.seed = seed;

  Simulation sim(config, values);
  for (std::uint64_t t = 0; t < g.gossip_ticks && !sim.absorbed(); ++t) sim.step();
  values = sim.values();
  for (auto& x : values) x += offset;
  return values;
}

}  // namespace

std::vector<Value> run_variant(const ForecastDataset& data, const VariantSpec& spec,
                               std::uint64_t seed) {
  std::vector<Value> out;
  out.reserve(data.days.size());
  std::vector<Value> day_values;
  for (std::size_t d = 0; d < data.days.size(); ++d) {
    day_values.clear();
    for (const auto& row : data.predictions) {
      if (row[d]) day_values.push_back(*row[d]);
    }
    if (day_values.empty()) {
      throw ValidationError("day " + data.days[d] + " has no available sources");
    }
    if (spec.gossip) day_values = gossip(std::move(day_values), *spec.gossip, seed + d);

    const auto [lo, hi] = std::minmax_element(day_values.begin(), day_values.end());
    const Value offset = *lo;
    const Value span = *hi - offset;
    for (auto& x : day_values) x -= offset;
    const VoteSet votes{day_values, std::nullopt};
    const Value result = spec.integration == Strategy::kConsensus
                             ? consensus_value(votes, span)
                             : dominant_value(votes);
    out.push_back(result + offset);
  }
  return out;
}

double mae(std::span<const std::optional<Value>> predictions, std::span<const Value> actuals) {
  if (predictions.size() != actuals.size()) {
    throw ValidationError("mae: " + std::to_string(predictions.size()) + " predictions vs " +
                          std::to_string(actuals.size()) + " actuals");
  }
  double sum = 0.0;
  std::size_t covered = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (!predictions[i]) continue;
    sum += std::abs(static_cast<double>(*predictions[i]) - static_cast<double>(actuals[i]));
    ++covered;
  }
  if (covered == 0) throw ValidationError("mae: no day has both a prediction and an actual");
  return sum / static_cast<double>(covered);
}

double mae(std::span<const Value> predictions, std::span<const Value> actuals) {
  std::vector<std::optional<Value>> wrapped(predictions.begin(), predictions.end());
  return mae(wrapped, actuals);
}

std::vector<double> per_source_mae(const ForecastDataset& data) {
  std::vector<double> out;
  out.reserve(data.sources.size());
  for (const auto& row : data.predictions) out.push_back(mae(row, data.actuals));
  return out;
}

Comparison compare(double system_mae, double comparator_mae) {
  Comparison c;
  if (system_mae == 0.0) {
    if (comparator_mae == 0.0) {
      c.ratio = 1.0;
      c.text = "equal";
    } else {
      c.better = true;
      c.text = "system perfect";
    }
    return c;
  }
  const double r = comparator_mae / system_mae;
  c.ratio = r;
  const long percent = std::lround(100.0 * r);
  if (percent == 100) {
    c.text = "equal";
  } else if (r < 1.0) {
    c.text = std::to_string(percent) + "%";
  } else {
    c.better = true;
    c.text = std::to_string(percent - 100) + "% better";
  }
  return c;
}

EvalReport compare_report(double system_mae, std::span<const double> per_source) {
  if (per_source.empty()) throw ValidationError("compare_report: no sources");
  if (system_mae < 0.0) throw ValidationError("compare_report: negative system MAE");
  EvalReport r;
  r.system_mae = system_mae;
  r.per_source_mae.assign(per_source.begin(), per_source.end());
  const auto [best, worst] = std::minmax_element(per_source.begin(), per_source.end());
  const double avg = std::accumulate(per_source.begin(), per_source.end(), 0.0) /
                     static_cast<double>(per_source.size());
  r.vs_best = compare(system_mae, *best);
  r.vs_worst = compare(system_mae, *worst);
  r.vs_avg = compare(system_mae, avg);
  return r;
}

std::vector<VariantResult> evaluate(const ForecastDataset& data,
                                    std::span<const VariantSpec> specs, std::uint64_t seed) {
  const auto sources = per_source_mae(data);
  std::vector<VariantResult> results;
  for (const auto& spec : specs) {
    VariantResult res{spec, run_variant(data, spec, seed), {}};
    res.report = compare_report(mae(std::span<const Value>(res.predictions), data.actuals), sources);
    results.push_back(std::move(res));
  }
  return results;
}

std::string render_table(std::span<const VariantResult> results) {
  std::vector<std::string> labels;
  std::size_t width = 6;
  for (const auto& r : results) {
    labels.push_back(std::string(variant_label(r.spec.variant)) + " (" +
                     std::string(variant_name(r.spec.variant)) + ")");
    width = std::max(width, labels.back().size());
  }
  std::ostringstream os;
  const auto row = [&os, width](std::string_view a, std::string_view b, std::string_view c,
                                std::string_view d, std::string_view e) {
    os << std::left << std::setw(static_cast<int>(width + 2)) << a << std::setw(8) << b
       << std::setw(16) << c << std::setw(16) << d << e << '\n';
  };
  row("System", "MAE", "Comp. w/ Best", "Comp. w/ Worst", "Comp. w/ Avg.");
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i].report;
    row(labels[i], format_fixed(r.system_mae, 3), r.vs_best.text, r.vs_worst.text,
        r.vs_avg.text);
  }
  return os.str();
}

namespace {

nlohmann::json comparison_json(const Comparison& c) {
  nlohmann::json j;
  j["ratio"] = c.ratio ? nlohmann::json(*c.ratio) : nlohmann::json(nullptr);
  j["better"] = c.better;
  j["text"] = c.text;
  return j;
}

nlohmann::json gossip_json(const std::optional<GossipParams>& g) {
  if (!g) return nullptr;
  return {{"v", g->v},
          {"f", g->f},
          {"friend_prob", g->friend_prob},
          {"gossip_ticks", g->gossip_ticks},
          {"strategy", to_string(g->strategy)},
          {"mixed_consensus_prob", g->mixed_consensus_prob},
          {"activation_prob", g->activation_prob}};
}

}  // namespace

std::string render_json(const ForecastDataset& data, std::span<const VariantResult> results,
                        std::uint64_t seed) {
  nlohmann::json doc;
  doc["seed"] = seed;
  doc["days"] = data.days.size();
  nlohmann::json sources = nlohmann::json::array();
  const auto per_source = per_source_mae(data);
  for (std::size_t s = 0; s < data.sources.size(); ++s) {
    sources.push_back({{"source", data.sources[s]}, {"mae", per_source[s]}});
  }
  doc["sources"] = sources;
  nlohmann::json variants = nlohmann::json::array();
  for (const auto& r : results) {
    variants.push_back({{"variant", variant_name(r.spec.variant)},
                        {"label", variant_label(r.spec.variant)},
                        {"integration", to_string(r.spec.integration)},
                        {"gossip", gossip_json(r.spec.gossip)},
                        {"mae", r.report.system_mae},
                        {"vs_best", comparison_json(r.report.vs_best)},
                        {"vs_worst", comparison_json(r.report.vs_worst)},
                        {"vs_avg", comparison_json(r.report.vs_avg)},
                        {"predictions", r.predictions}});
  }
  doc["variants"] = variants;
  return doc.dump(2) + "\n";
}

ForecastDataset synthetic_dataset(std::size_t days, std::span<const Value> biases,
                                  double dropout_prob, std::uint64_t seed) {
  if (biases.empty()) throw ValidationError("synthetic_dataset: no sources");
  Rng rng(seed);
  std::uniform_int_distribution<Value> noise(-3, 3);
  std::bernoulli_distribution drop(dropout_prob);

  ForecastDataset data;
  using namespace std::chrono;
  const sys_days start = year{2016} / October / 1;
  for (std::size_t d = 0; d < days; ++d) {
    const year_month_day ymd{start + std::chrono::days{static_cast<int>(d)}};
    std::ostringstream label;
    label << static_cast<int>(ymd.year()) << '-' << std::setw(2) << std::setfill('0')
          << static_cast<unsigned>(ymd.month()) << '-' << std::setw(2) << std::setfill('0')
          << static_cast<unsigned>(ymd.day());
    data.days.push_back(label.str());
    const double season = 6.0 * std::sin(2.0 * std::numbers::pi * static_cast<double>(d) / 30.0);
    data.actuals.push_back(12 + static_cast<Value>(std::lround(season)) + noise(rng));
  }
  for (std::size_t s = 0; s < biases.size(); ++s) data.sources.push_back("src" + std::to_string(s));
  data.predictions.assign(biases.size(), std::vector<std::optional<Value>>(days));
  for (std::size_t d = 0; d < days; ++d) {
    std::size_t kept = 0;
    for (std::size_t s = 0; s < biases.size(); ++s) {
      if (dropout_prob > 0.0 && drop(rng)) continue;
      data.predictions[s][d] = data.actuals[d] + biases[s];
      ++kept;
    }
    if (kept == 0) {
      std::uniform_int_distribution<std::size_t> pick(0, biases.size() - 1);
      const auto s = pick(rng);
      data.predictions[s][d] = data.actuals[d] + biases[s];
    }
  }
  // Every source must cover at least one day.
  for (std::size_t s = 0; s < biases.size(); ++s) {
    const auto& row = data.predictions[s];
    if (std::none_of(row.begin(), row.end(), [](const auto& p) { return p.has_value(); })) {
      data.predictions[s][0] = data.actuals[0] + biases[s];
    }
  }
  return data;
}

}  // namespace agentvote::forecast
