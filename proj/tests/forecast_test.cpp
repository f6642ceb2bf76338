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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "oracles.hpp"

namespace agentvote::forecast {
namespace {

constexpr const char* kActuals3 =
    "day,actual\n"
    "2016-10-01,10\n"
    "2016-10-02,12\n"
    "2016-10-03,11\n";

constexpr const char* kComplete =
    "day,source,prediction\n"
    "2016-10-01,A,9\n"
    "2016-10-01,B,11\n"
    "2016-10-02,A,12\n"
    "2016-10-02,B,14\n"
    "2016-10-03,A,11\n"
    "2016-10-03,B,10\n";

// B is missing on day 2.
constexpr const char* kDropout =
    "day,source,prediction\n"
    "2016-10-01,A,9\n"
    "2016-10-01,B,11\n"
    "2016-10-01,C,11\n"
    "2016-10-02,A,2\n"
    "2016-10-02,C,6\n"
    "2016-10-03,A,11\n"
    "2016-10-03,B,10\n"
    "2016-10-03,C,11\n";

std::string ErrorOf(std::string_view pred, std::string_view act) {
  try {
    parse_dataset(pred, act);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

ForecastDataset SingleDay(std::vector<Value> predictions, Value actual) {
  ForecastDataset d;
  d.days = {"2016-10-01"};
  d.actuals = {actual};
  for (std::size_t s = 0; s < predictions.size(); ++s) {
    d.sources.push_back("s" + std::to_string(s));
    d.predictions.push_back({predictions[s]});
  }
  return d;
}

TEST(LoadDatasetTest, CompleteFixture) {
  const auto d = parse_dataset(kComplete, kActuals3);
  EXPECT_EQ(d.days.size(), 3u);
  EXPECT_EQ(d.sources, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(d.prediction_count(), 6u);
  EXPECT_EQ(d.predictions[1][1], std::optional<Value>(14));
}

TEST(LoadDatasetTest, DayWithoutActualIsNamed) {
  const std::string actuals = "day,actual\n2016-10-01,10\n2016-10-03,11\n";
  const auto err = ErrorOf(kComplete, actuals);
  EXPECT_NE(err.find("2016-10-02"), std::string::npos) << err;
  EXPECT_NE(err.find("row 4"), std::string::npos) << err;
}

TEST(LoadDatasetTest, DuplicatePairRejectedWithRows) {
  const std::string pred = std::string(kComplete) + "2016-10-01,A,7\n";
  const auto err = ErrorOf(pred, kActuals3);
  EXPECT_NE(err.find("row 8"), std::string::npos) << err;
  EXPECT_NE(err.find("row 2"), std::string::npos) << err;
}

TEST(LoadDatasetTest, MalformedRowsRejected) {
  EXPECT_NE(ErrorOf("day,source,prediction\n2016-10-01,A\n", kActuals3).find("row 2"),
            std::string::npos);
  EXPECT_NE(ErrorOf("day,source,prediction\n2016-10-01,A,1.5\n", kActuals3).find("integer"),
            std::string::npos);
  EXPECT_NE(ErrorOf("day,source,prediction\n01/10/2016,A,1\n", kActuals3).find("YYYY-MM-DD"),
            std::string::npos);
  EXPECT_NE(ErrorOf(kComplete, "date,actual\n").find("header"), std::string::npos);
  EXPECT_NE(ErrorOf(kComplete, std::string(kActuals3) + "2016-10-01,3\n").find("duplicate"),
            std::string::npos);
}

TEST(LoadDatasetTest, MissingFileIsIoError) {
  EXPECT_THROW(load_dataset("/nonexistent/p.csv", "/nonexistent/a.csv"), IoError);
}

TEST(LoadDatasetTest, MissingCellsStayAbsent) {
  const auto d = parse_dataset(kDropout, kActuals3);
  EXPECT_FALSE(d.predictions[1][1].has_value());
  EXPECT_EQ(d.prediction_count(), 8u);
}

TEST(RunVariantTest, DroppedSourceSitsOut) {
  const auto d = parse_dataset(kDropout, kActuals3);
  // Day 2 has only A=2 and C=6; both operators fall back to 2.
  const auto cons = run_variant(d, default_spec(Variant::kCentralizedConsensus), 1);
  EXPECT_EQ(cons, (std::vector<Value>{11, 2, 11}));
  const auto dom = run_variant(d, default_spec(Variant::kBasicDominant), 1);
  EXPECT_EQ(dom, (std::vector<Value>{11, 2, 11}));
  // Put B back on day 2 at 6: consensus moves to 6.
  const auto full = parse_dataset(std::string(kDropout) + "2016-10-02,B,6\n", kActuals3);
  EXPECT_EQ(run_variant(full, default_spec(Variant::kCentralizedConsensus), 1)[1], 6);
}

TEST(RunVariantTest, DirectModeAndMedian) {
  EXPECT_EQ(run_variant(SingleDay({3, 3, 5}, 0), default_spec(Variant::kBasicDominant), 1),
            (std::vector<Value>{3}));
  EXPECT_EQ(run_variant(SingleDay({1, 3, 9}, 0), default_spec(Variant::kCentralizedConsensus), 1),
            (std::vector<Value>{3}));
  // Negative temperatures work through the per-day shift.
  EXPECT_EQ(run_variant(SingleDay({-4, -2, -2}, 0), default_spec(Variant::kBasicDominant), 1),
            (std::vector<Value>{-2}));
}

TEST(RunVariantTest, DayWithoutSourcesRejected) {
  ForecastDataset d = SingleDay({1, 2}, 0);
  d.predictions[0][0].reset();
  d.predictions[1][0].reset();
  EXPECT_THROW(run_variant(d, default_spec(Variant::kBasicDominant), 1), ValidationError);
}

TEST(RunVariantTest, ZeroGossipMatchesCentralized) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const std::vector<Value> biases{-3, -1, 0, 2, 4, 1, -2};
    const auto d = synthetic_dataset(30, biases, 0.2, seed);
    for (const auto [dec, cen] : {std::pair{Variant::kDominantDecentralized, Variant::kBasicDominant},
                                  {Variant::kDominantMixed, Variant::kBasicDominant},
                                  {Variant::kDecentralizedConsensus, Variant::kCentralizedConsensus},
                                  {Variant::kDecentralizedConsensusFriends,
                                   Variant::kCentralizedConsensus}}) {
      auto spec = default_spec(dec);
      spec.gossip->gossip_ticks = 0;
      EXPECT_EQ(run_variant(d, spec, seed), run_variant(d, default_spec(cen), seed));
    }
  }
}

TEST(RunVariantTest, GossipIsDeterministicAndStaysInRange) {
  const std::vector<Value> biases{-2, -1, 0, 1, 2, 3, -3, 0, 1, 2, -1, 0, 4, -4, 1, 0, 2};
  const auto d = synthetic_dataset(20, biases, 0.1, 11);
  for (const Variant v : kAllVariants) {
    const auto a = run_variant(d, default_spec(v), 7);
    EXPECT_EQ(a, run_variant(d, default_spec(v), 7)) << variant_name(v);
    for (std::size_t day = 0; day < d.days.size(); ++day) {
      Value lo = 1000, hi = -1000;
      for (const auto& row : d.predictions) {
        if (row[day]) {
          lo = std::min(lo, *row[day]);
          hi = std::max(hi, *row[day]);
        }
      }
      EXPECT_GE(a[day], lo);
      EXPECT_LE(a[day], hi);
    }
  }
}

TEST(RunVariantTest, BasicDominantPicksASourcePrediction) {
  Rng gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Value> preds(std::uniform_int_distribution<int>(1, 9)(gen));
    for (auto& p : preds) p = std::uniform_int_distribution<Value>(-5, 5)(gen);
    const Value out = run_variant(SingleDay(preds, 0), default_spec(Variant::kBasicDominant), 1)[0];
    EXPECT_NE(std::find(preds.begin(), preds.end(), out), preds.end());
    const std::vector<int> as_int(preds.begin(), preds.end());
    EXPECT_EQ(out, oracle::mode(as_int, std::nullopt, -5, 5));
  }
}

TEST(RunVariantTest, RemovingASourceOnlyTouchesItsDays) {
  const std::vector<Value> biases{-2, -1, 0, 1, 2, 3};
  const auto d = synthetic_dataset(40, biases, 0.3, 5);
  for (std::size_t drop = 0; drop < d.sources.size(); ++drop) {
    ForecastDataset reduced = d;
    reduced.sources.erase(reduced.sources.begin() + static_cast<std::ptrdiff_t>(drop));
    reduced.predictions.erase(reduced.predictions.begin() + static_cast<std::ptrdiff_t>(drop));
    bool all_days_covered = true;
    for (std::size_t day = 0; day < d.days.size(); ++day) {
      bool any = false;
      for (const auto& row : reduced.predictions) any = any || row[day].has_value();
      all_days_covered = all_days_covered && any;
    }
    if (!all_days_covered) continue;
    for (const Variant v : kAllVariants) {
      const auto before = run_variant(d, default_spec(v), 9);
      const auto after = run_variant(reduced, default_spec(v), 9);
      for (std::size_t day = 0; day < d.days.size(); ++day) {
        if (!d.predictions[drop][day]) EXPECT_EQ(before[day], after[day]) << variant_name(v);
      }
    }
  }
}

TEST(MaeTest, Examples) {
  EXPECT_DOUBLE_EQ(mae(std::vector<Value>{2, 4}, std::vector<Value>{3, 3}), 1.0);
  EXPECT_DOUBLE_EQ(mae(std::vector<Value>{5, 6}, std::vector<Value>{5, 6}), 0.0);
  EXPECT_DOUBLE_EQ(mae(std::vector<Value>{0, 0, 3}, std::vector<Value>{1, 2, 3}), 1.0);
}

TEST(MaeTest, CoveredDaysOnly) {
  const std::vector<std::optional<Value>> preds{1, std::nullopt, 5};
  EXPECT_DOUBLE_EQ(mae(preds, std::vector<Value>{0, 100, 5}), 0.5);
  const std::vector<std::optional<Value>> none{std::nullopt};
  EXPECT_THROW(mae(none, std::vector<Value>{1}), ValidationError);
  EXPECT_THROW(mae(std::vector<Value>{1}, std::vector<Value>{1, 2}), ValidationError);
}

TEST(MaePropertyTest, NonNegativeAndZeroIffPerfect) {
  Rng gen(8);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Value> p(std::uniform_int_distribution<int>(1, 20)(gen)), a(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      a[i] = std::uniform_int_distribution<Value>(-10, 10)(gen);
      p[i] = std::bernoulli_distribution(0.7)(gen) ? a[i]
                                                    : std::uniform_int_distribution<Value>(-10, 10)(gen);
    }
    const double m = mae(p, a);
    EXPECT_GE(m, 0.0);
    EXPECT_EQ(m == 0.0, p == a);
  }
}

TEST(CompareReportTest, CellFormats) {
  EXPECT_EQ(compare(2.0, 1.78).text, "89%");
  EXPECT_FALSE(compare(2.0, 1.78).better);
  EXPECT_EQ(compare(1.0, 1.17).text, "17% better");
  EXPECT_TRUE(compare(1.0, 1.17).better);
  EXPECT_EQ(compare(1.5, 1.5).text, "equal");
  EXPECT_EQ(compare(1.0, 1.004).text, "equal");
  EXPECT_EQ(compare(0.0, 0.0).text, "equal");
  const auto perfect = compare(0.0, 1.0);
  EXPECT_EQ(perfect.text, "system perfect");
  EXPECT_FALSE(perfect.ratio.has_value());
}

TEST(CompareReportTest, BestWorstAverage) {
  const std::vector<double> sources{1.78, 2.2, 2.34};
  const auto r = compare_report(2.0, sources);
  EXPECT_EQ(r.vs_best.text, "89%");
  EXPECT_EQ(r.vs_worst.text, "17% better");
  EXPECT_EQ(r.vs_avg.text, "5% better");  // mean 2.106667
  EXPECT_NEAR(*r.vs_avg.ratio, (1.78 + 2.2 + 2.34) / 3 / 2.0, 1e-12);
  EXPECT_EQ(compare_report((1.78 + 2.2 + 2.34) / 3, sources).vs_avg.text, "equal");
  EXPECT_THROW(compare_report(1.0, std::vector<double>{}), ValidationError);
}

TEST(VariantSpecTest, ParsesNamesAndOverrides) {
  const auto spec = parse_variant("dominant-decentralized:gossip_ticks=0:f=4:friend_prob=0.25");
  EXPECT_EQ(spec.variant, Variant::kDominantDecentralized);
  ASSERT_TRUE(spec.gossip);
  EXPECT_EQ(spec.gossip->gossip_ticks, 0u);
  EXPECT_EQ(spec.gossip->f, 4u);
  EXPECT_DOUBLE_EQ(spec.gossip->friend_prob, 0.25);
  EXPECT_EQ(spec.gossip->v, 3u);

  const auto def = default_spec(Variant::kDominantDecentralized);
  EXPECT_EQ(def.gossip->v, 3u);
  EXPECT_EQ(def.gossip->f, 15u);
  EXPECT_DOUBLE_EQ(def.gossip->friend_prob, 0.4);
  EXPECT_EQ(default_spec(Variant::kDominantMixed).gossip->strategy, Strategy::kMixed);
  EXPECT_DOUBLE_EQ(default_spec(Variant::kDominantMixed).gossip->mixed_consensus_prob, 0.5);
  EXPECT_FALSE(default_spec(Variant::kBasicDominant).gossip);
  EXPECT_FALSE(default_spec(Variant::kCentralizedConsensus).gossip);

  EXPECT_THROW(parse_variant("weighted-vote"), ValidationError);
  EXPECT_THROW(parse_variant("basic-dominant:v=3"), ValidationError);
  EXPECT_THROW(parse_variant("dominant-mixed:bogus=1"), ValidationError);
  EXPECT_EQ(parse_variant_list("basic-dominant,dominant-mixed").size(), 2u);
}

TEST(DatasetCsvTest, RoundTrip) {
  const std::vector<Value> biases{-2, 0, 3};
  const auto d = synthetic_dataset(25, biases, 0.3, 4);
  const auto back = parse_dataset(predictions_csv(d), actuals_csv(d));
  EXPECT_EQ(back.days, d.days);
  EXPECT_EQ(back.sources, d.sources);
  EXPECT_EQ(back.predictions, d.predictions);
  EXPECT_EQ(back.actuals, d.actuals);
}

TEST(EvaluateTest, ReportIsDeterministic) {
  const std::vector<Value> biases{-2, -1, 0, 1, 2};
  const auto d = synthetic_dataset(30, biases, 0.0, 2);
  const std::vector<VariantSpec> specs{default_spec(Variant::kDominantMixed),
                                       default_spec(Variant::kDecentralizedConsensusFriends)};
  const auto a = evaluate(d, specs, 3);
  const auto b = evaluate(d, specs, 3);
  EXPECT_EQ(render_json(d, a, 3), render_json(d, b, 3));
  EXPECT_EQ(render_table(a), render_table(b));
  EXPECT_NE(render_table(a).find("Dom. Mix."), std::string::npos);
}

TEST(RunVariantTest, ConsensusAwayFromZero) {
  const auto data = parse_dataset(
      "day,source,prediction\n"
      "2016-10-01,A,100\n2016-10-01,B,104\n2016-10-01,C,110\n",
      "day,actual\n2016-10-01,103\n");
  EXPECT_EQ(run_variant(data, default_spec(Variant::kCentralizedConsensus), 1),
            std::vector<Value>{104});
  EXPECT_EQ(run_variant(data, default_spec(Variant::kBasicDominant), 1),
            std::vector<Value>{100});
}

TEST(SyntheticDatasetTest, BundledFixtureIsReproducible) {
  const std::filesystem::path dir = std::filesystem::path(AGENTVOTE_DATA_DIR) / "synthetic";
  const auto bundled = load_dataset(dir / "predictions.csv", dir / "actuals.csv");
  const Value biases[] = {-2, -1, 0, 1, 2};
  const auto fresh = synthetic_dataset(60, biases, 0.0, 2016);
  EXPECT_EQ(predictions_csv(bundled), predictions_csv(fresh));
  EXPECT_EQ(actuals_csv(bundled), actuals_csv(fresh));
  EXPECT_EQ(bundled.sources, (std::vector<std::string>{"src0", "src1", "src2", "src3", "src4"}));
}

}  // namespace
}  // namespace agentvote::forecast
