// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <fstream>
#include <random>
#include <tuple>

#include "doctest.h"

#include "antbench/annotations.hpp"
#include "antbench/error.hpp"
#include "antbench/synthetic.hpp"

using namespace antbench;
using nlohmann::json;

namespace {

json record(const std::string& game_time, const std::string& label,
            const json& position = nullptr) {
  json r = {{"gameTime", game_time}, {"label", label}};
  if (!position.is_null()) r["position"] = position;
  return r;
}

json doc_of(json records) { return {{"annotations", std::move(records)}}; }

std::string parse_error_message(const json& doc) {
  try {
    parse_annotations_json(doc, "g");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

// Per-split, per-class counts of the public ball-action labels (train, valid,
// test); the last two columns are Free Kick and Goal.
constexpr std::array<std::array<int, kNumRawClasses>, 3> kPublicCounts = {{
    {2679, 2297, 465, 404, 331, 213, 177, 128, 100, 34, 15, 6},
    {585, 554, 115, 127, 75, 54, 24, 28, 25, 12, 4, 1},
    {1721, 1449, 181, 182, 145, 95, 60, 67, 44, 28, 2, 6},
}};

std::vector<GameAnnotations> public_count_corpus() {
  std::vector<GameAnnotations> corpus;
  const Split splits[] = {Split::kTrain, Split::kValid, Split::kTest};
  for (int s = 0; s < 3; ++s) {
    GameAnnotations g;
    g.game_id = "public/" + std::string(split_name(splits[s]));
    g.split = splits[s];
    std::int64_t t = 0;
    for (int c = 0; c < kNumRawClasses; ++c) {
      for (int k = 0; k < kPublicCounts[s][c]; ++k) {
        g.actions.push_back({g.game_id, 1, t += 100, class_from_index(c)});
      }
    }
    corpus.push_back(std::move(g));
  }
  return corpus;
}

}  // namespace

TEST_SUITE("annotations") {

TEST_CASE("labels parse in canonical and upper-case spellings") {
  CHECK(parse_class_label("Pass") == ActionClass::kPass);
  CHECK(parse_class_label("HIGH PASS") == ActionClass::kHighPass);
  CHECK(parse_class_label("THROW IN") == ActionClass::kThrowIn);
  CHECK(parse_class_label("Throw-in") == ActionClass::kThrowIn);
  CHECK(parse_class_label("PLAYER SUCCESSFUL TACKLE") == ActionClass::kSuccessfulTackle);
  CHECK(parse_class_label("FREE KICK") == ActionClass::kFreeKick);
  CHECK(parse_class_label("goal") == ActionClass::kGoal);
  CHECK_FALSE(parse_class_label("Dribble").has_value());
  for (int c = 0; c < kNumRawClasses; ++c) {
    CHECK(parse_class_label(class_name(class_from_index(c))) == class_from_index(c));
  }
}

TEST_CASE("two records echo back with their halves and times") {
  const auto g = parse_annotations_json(
      doc_of({record("1 - 02:34.120", "Pass"), record("1 - 44:01.000", "Goal")}), "g1");
  REQUIRE(g.actions.size() == 2);
  CHECK(g.actions[0].label == ActionClass::kPass);
  CHECK(g.actions[0].time_ms == 154'120);
  CHECK(g.actions[1].label == ActionClass::kGoal);
  CHECK(g.actions[1].time_ms == 2'641'000);
  CHECK(g.game_id == "g1");
}

TEST_CASE("empty annotation list") {
  const auto g = parse_annotations_json(doc_of(json::array()), "g");
  CHECK(g.actions.empty());
}

TEST_CASE("position wins over second-resolution gameTime") {
  const auto g = parse_annotations_json(
      doc_of({record("2 - 00:01", "PASS", "1520"), record("1 - 10:00", "DRIVE", 600'999)}), "g");
  REQUIRE(g.actions.size() == 2);
  CHECK(g.actions[0].half == 1);
  CHECK(g.actions[0].time_ms == 600'999);
  CHECK(g.actions[1].half == 2);
  CHECK(g.actions[1].time_ms == 1520);
}

TEST_CASE("three games of 50 shuffled records come back in sorted order") {
  std::mt19937_64 rng(7);
  std::size_t total = 0;
  for (int game = 0; game < 3; ++game) {
    json records = json::array();
    std::vector<std::tuple<int, std::int64_t, std::string>> raw;
    for (int i = 0; i < 50; ++i) {
      const int half = 1 + static_cast<int>(rng() % 2);
      const std::int64_t t = static_cast<std::int64_t>(rng() % 40) * 250;  // force ties
      const auto cls = class_from_index(static_cast<int>(rng() % kNumClasses));
      raw.emplace_back(half, t, std::string(class_name(cls)));
      records.push_back(record(format_game_time(half, t), std::string(class_name(cls)),
                               std::to_string(t)));
    }
    const auto g = parse_annotations_json(doc_of(records), "game" + std::to_string(game));
    std::sort(raw.begin(), raw.end());
    REQUIRE(g.actions.size() == raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      CHECK(g.actions[i].half == std::get<0>(raw[i]));
      CHECK(g.actions[i].time_ms == std::get<1>(raw[i]));
      CHECK(class_name(g.actions[i].label) == std::get<2>(raw[i]));
    }
    total += g.actions.size();
  }
  CHECK(total == 150);
}

TEST_CASE("malformed records name the record") {
  CHECK(parse_error_message(doc_of({record("1 - 00:01", "Pass"), record("1 - 0:1", "Pass")}))
            .find("record 1: malformed gameTime") != std::string::npos);
  CHECK(parse_error_message(doc_of({record("3 - 00:01", "Pass")})).find("record 0") !=
        std::string::npos);
  CHECK(parse_error_message(doc_of({record("1 - 00:61", "Pass")})).find("malformed") !=
        std::string::npos);
  CHECK(parse_error_message(doc_of({record("1 - 00:01", "Dribble")}))
            .find("unknown label \"Dribble\"") != std::string::npos);
  CHECK(parse_error_message(doc_of({record("1 - 00:00", "Pass", "-5")}))
            .find("negative time") != std::string::npos);
  CHECK(parse_error_message(doc_of({record("1 - 00:00", "Pass", -5)}))
            .find("negative time") != std::string::npos);
  CHECK(parse_error_message(doc_of({record("1 - 00:00", "Pass", "12x")}))
            .find("malformed position") != std::string::npos);
  CHECK(parse_error_message(doc_of({record("1 - 00:05", "Pass", "1000")}))
            .find("disagrees") != std::string::npos);
  CHECK(parse_error_message(doc_of(json::array({json{{"label", "Pass"}}}))).find("missing gameTime") !=
        std::string::npos);
  CHECK(parse_error_message(json{{"foo", 1}}).find("annotations") != std::string::npos);
}

TEST_CASE("declared half duration bounds the action times") {
  json doc = doc_of({record("1 - 00:10", "Pass")});
  doc["halfDurationsMs"] = {9000, nullptr};
  CHECK(parse_error_message(doc).find("exceeds half duration") != std::string::npos);
  doc["halfDurationsMs"] = {10'000, nullptr};
  const auto g = parse_annotations_json(doc, "g");
  CHECK(g.half_duration_ms[0] == 10'000);
  CHECK_FALSE(g.half_duration_ms[1].has_value());
}

TEST_CASE("serialize then parse is the identity") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SyntheticGameSpec spec;
    spec.game_id = "rt/" + std::to_string(seed);
    spec.seed = seed;
    spec.half_duration_ms = 120'000;
    spec.include_excluded = true;
    spec.split = static_cast<Split>(seed % kNumSplits);
    const GameAnnotations g = make_synthetic_game(spec);
    const GameAnnotations back = parse_annotations_json(json::parse(to_json(g).dump()), "x");
    CHECK(back == g);
  }
}

TEST_CASE("reads a label file from disk") {
  const auto g = parse_annotations(std::string(ANTBENCH_SOURCE_DIR) +
                                   "/fixtures/labels/sn_style/Labels-ball.json");
  CHECK(g.game_id == "sn_style");
  CHECK_FALSE(g.actions.empty());
  CHECK(std::is_sorted(g.actions.begin(), g.actions.end(), action_less));
  CHECK_THROWS_AS(parse_annotations("/nonexistent/Labels-ball.json"), ParseError);
}

TEST_CASE("filtering the public label counts leaves 12399 actions") {
  const auto corpus = public_count_corpus();
  std::size_t before = 0, after = 0, fk = 0, goals = 0;
  for (const auto& g : corpus) {
    before += g.actions.size();
    for (const auto& a : g.actions) {
      fk += a.label == ActionClass::kFreeKick;
      goals += a.label == ActionClass::kGoal;
    }
    after += filter_classes(g).actions.size();
  }
  CHECK(before == 12433);
  CHECK(fk == 21);
  CHECK(goals == 13);
  CHECK(after == 12399);
}

TEST_CASE("filter_classes: identity without excluded labels, idempotent, exact count") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SyntheticGameSpec spec;
    spec.seed = seed;
    spec.include_excluded = seed % 2 == 0;
    spec.mean_gap_s = 1.0;
    const auto g = make_synthetic_game(spec);
    std::size_t excluded = 0;
    for (const auto& a : g.actions) {
      excluded += a.label == ActionClass::kFreeKick || a.label == ActionClass::kGoal;
    }
    const auto f = filter_classes(g);
    CHECK(f.actions.size() == g.actions.size() - excluded);
    CHECK(filter_classes(f) == f);
    if (excluded == 0) CHECK(f == g);
    CHECK(std::is_sorted(f.actions.begin(), f.actions.end(), action_less));
  }
}

TEST_CASE("inverse-frequency weights") {
  const std::vector<std::int64_t> uniform = {10, 10};
  auto w = inverse_frequency_weights(uniform);
  CHECK(w[0] == Rational(1));
  CHECK(w[1] == Rational(1));

  const std::vector<std::int64_t> skewed = {30, 10};
  w = inverse_frequency_weights(skewed);
  CHECK(w[0] == Rational(2, 3));
  CHECK(w[1] == Rational(2));

  const std::vector<std::int64_t> with_zero = {5, 0};
  CHECK_THROWS_AS(inverse_frequency_weights(with_zero), Error);
}

TEST_CASE("public train counts reproduce exact weight ratios") {
  auto corpus = public_count_corpus();
  for (auto& g : corpus) g = filter_classes(std::move(g));
  const ClassStats stats = class_stats(corpus);
  const auto& w = stats.weights;
  CHECK(w[class_index(ActionClass::kSuccessfulTackle)] / w[class_index(ActionClass::kPass)] ==
        Rational(2679, 34));
  for (int a = 0; a < kNumClasses; ++a) {
    for (int b = 0; b < kNumClasses; ++b) {
      CHECK(w[a] * Rational(stats.train_counts()[a]) == w[b] * Rational(stats.train_counts()[b]));
      if (stats.train_counts()[a] > stats.train_counts()[b]) CHECK(w[a] < w[b]);
    }
  }
  std::int64_t total = 0;
  for (const auto& per_split : stats.counts) {
    for (auto n : per_split) total += n;
  }
  CHECK(total == 12399);
  CHECK(stats.counts[static_cast<int>(Split::kTest)][0] == 1721);
}

TEST_CASE("class_stats rejects unfiltered corpora and empty training classes") {
  auto corpus = public_count_corpus();
  CHECK_THROWS_AS(class_stats(corpus), Error);
  std::vector<GameAnnotations> only_test = {filter_classes(corpus[2])};
  CHECK_THROWS_AS(class_stats(only_test), Error);
}

}  // TEST_SUITE
