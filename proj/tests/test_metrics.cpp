// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"

#include "antbench/error.hpp"
#include "antbench/metrics.hpp"
#include "support/reference_evaluator.hpp"

using namespace antbench;

namespace {

EvalClip clip_with(std::string id, std::vector<TimedLabel> gt, std::int64_t start = 0) {
  EvalClip c;
  c.clip_id = std::move(id);
  c.game_id = "g";
  c.anticipation_start_ms = start;
  c.anticipation_end_ms = start + 5000;
  c.context_end_ms = start;
  c.gt = std::move(gt);
  return c;
}

SlotOutput onehot_slot(double actionness, int cls, int width, double time_raw) {
  SlotOutput o;
  o.actionness = actionness;
  o.class_probs.assign(static_cast<std::size_t>(width), 0.0);
  o.class_probs[static_cast<std::size_t>(cls)] = 1.0;
  o.time_raw = time_raw;
  return o;
}

// Random instance: clips with up to 4 gt and 6 predictions per class.
struct Instance {
  EvalClipSet set;
  std::vector<Prediction> preds;
};

Instance random_instance(std::mt19937_64& rng, int num_active_classes) {
  Instance inst;
  const std::size_t clips = 1 + rng() % 20;
  auto time_ms = [&] { return static_cast<std::int64_t>(rng() % 50) * 100; };  // coarse: ties
  for (std::size_t i = 0; i < clips; ++i) {
    std::vector<TimedLabel> gt;
    std::string id = "c" + std::to_string(1000 + i);
    for (int c = 0; c < num_active_classes; ++c) {
      const auto ngt = rng() % 5, npred = rng() % 7;
      for (std::size_t k = 0; k < ngt; ++k) gt.push_back({class_from_index(c), time_ms()});
      for (std::size_t k = 0; k < npred; ++k) {
        inst.preds.push_back({id, class_from_index(c), static_cast<double>(time_ms()) / 1000.0,
                              static_cast<double>(rng() % 11) / 10.0});
      }
    }
    std::sort(gt.begin(), gt.end(),
              [](const TimedLabel& a, const TimedLabel& b) { return a.offset_ms < b.offset_ms; });
    inst.set.clips.push_back(clip_with(id, gt, static_cast<std::int64_t>(i) * 5000));
  }
  return inst;
}

void check_against_reference(const Instance& inst, const EvalReport& report) {
  std::vector<testing::RefPrediction> rp;
  for (const auto& p : inst.preds) rp.push_back({p.clip_id, class_index(p.label), p.time_s, p.confidence});
  std::vector<testing::RefGt> rg;
  std::vector<std::string> order;
  for (const auto& c : inst.set.clips) {
    order.push_back(c.clip_id);
    for (const auto& g : c.gt) rg.push_back({c.clip_id, class_index(g.label), g.offset_s()});
  }
  for (const auto& dr : report.deltas) {
    const auto ref = testing::reference_evaluate(rp, rg, order, kNumClasses, dr.delta);
    for (int c = 0; c < kNumClasses; ++c) {
      const auto& mine = dr.per_class[c];
      REQUIRE(mine.ap.has_value() == ref[c].ap.has_value());
      if (mine.ap) CHECK(std::abs(*mine.ap - *ref[c].ap) <= 1e-9);
      CHECK(mine.tp == ref[c].tp);
      CHECK(mine.fp == ref[c].fp);
    }
  }
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("tolerance parsing") {
  CHECK(parse_deltas("1,2,3,4,5,inf") ==
        std::vector<double>(kDefaultDeltas.begin(), kDefaultDeltas.end()));
  CHECK(parse_deltas(" 2.5 , INF ") == std::vector<double>{2.5, kInfiniteDelta});
  CHECK_THROWS_AS(parse_deltas("1,x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_deltas("0"), std::invalid_argument);
  CHECK(format_delta(kInfiniteDelta) == "inf");
  CHECK(format_delta(2.0) == "2");
}

TEST_CASE("decode a certain Pass at half the window") {
  const BenchConfig cfg;
  const std::vector<SlotOutput> out = {onehot_slot(1.0, 0, 10, std::log(0.5))};
  const auto r = decode_predictions("clip", out, HeadVariant::kQAct, cfg);
  REQUIRE(r.predictions.size() == 10);
  const auto& p = r.predictions[0];
  CHECK(p.label == ActionClass::kPass);
  CHECK(p.confidence == 1.0);
  // The decoder inverts the log encoding exactly, so ln(0.5) lands epsilon early.
  CHECK(p.time_s == doctest::Approx(2.5).epsilon(1e-5));
  CHECK(std::abs(p.time_s - 2.5) <= 5.0 * kTimeEpsilon + 1e-12);
  const auto exact = decode_predictions(
      "clip", std::vector<SlotOutput>{onehot_slot(1.0, 0, 10, encode_time(0.5))},
      HeadVariant::kQAct, cfg);
  CHECK(exact.predictions[0].time_s == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(r.clamped_times == 0);
}

TEST_CASE("EoS in the first slot discards everything") {
  const BenchConfig cfg;
  std::vector<SlotOutput> out(8, onehot_slot(1.0, 2, 11, -1.0));
  out[0] = onehot_slot(1.0, 10, 11, -1.0);
  CHECK(decode_predictions("c", out, HeadVariant::kQEOS, cfg).predictions.empty());
  out[0] = onehot_slot(1.0, 2, 11, -1.0);
  out[3] = onehot_slot(1.0, 10, 11, -1.0);
  CHECK(decode_predictions("c", out, HeadVariant::kQEOS, cfg).predictions.size() == 30);
}

TEST_CASE("background is never emitted and anchors decode inside their bin") {
  const BenchConfig cfg;
  std::vector<SlotOutput> out(8, onehot_slot(0.7, 10, 11, -1.0));
  const auto bg = decode_predictions("c", out, HeadVariant::kQBckg, cfg);
  CHECK(bg.predictions.size() == 80);
  for (const auto& p : bg.predictions) CHECK(p.confidence == 0.0);

  std::vector<SlotOutput> anchors(8, onehot_slot(0.25, 1, 10, encode_time(0.04)));
  const auto an = decode_predictions("c", anchors, HeadVariant::kAnchors, cfg);
  CHECK(an.predictions[3 * 10].time_s == doctest::Approx(1.9).epsilon(1e-9));
  CHECK(an.predictions[3 * 10 + 1].confidence == 0.25);
}

TEST_CASE("out-of-range times are clamped and counted") {
  const BenchConfig cfg;
  const std::vector<SlotOutput> out = {onehot_slot(1.0, 0, 10, 2.0)};
  const auto r = decode_predictions("c", out, HeadVariant::kQAct, cfg);
  CHECK(r.clamped_times == 1);
  CHECK(r.predictions[0].time_s == 5.0);
}

TEST_CASE("decoded confidences equal actionness times class probability") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const BenchConfig cfg;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SlotOutput> out(8);
    for (auto& o : out) {
      o.actionness = u(rng);
      o.class_probs.resize(10);
      double total = 0.0;
      for (auto& p : o.class_probs) total += (p = u(rng) + 1e-3);
      for (auto& p : o.class_probs) p /= total;
      o.time_raw = std::log(u(rng) * 0.999 + 1e-6);
    }
    const auto r = decode_predictions("c", out, HeadVariant::kQAct, cfg);
    REQUIRE(r.predictions.size() == 80);
    for (std::size_t s = 0; s < 8; ++s) {
      for (std::size_t c = 0; c < 10; ++c) {
        CHECK(r.predictions[s * 10 + c].confidence == out[s].actionness * out[s].class_probs[c]);
      }
    }
  }
}

TEST_CASE("worked matching example") {
  const std::vector<ScoredTime> preds = {{1.2, 0.9}, {4.9, 0.8}, {3.1, 0.7}};
  const std::vector<double> gt = {1.0, 3.0};
  const auto flags = match_window(preds, gt, 1.0);
  CHECK(flags == std::vector<bool>{true, false, true});
  // Exhaustive oracle: every (pred, gt) pair within reach.
  for (std::size_t i = 0; i < preds.size(); ++i) {
    bool reachable = false;
    for (double g : gt) reachable |= std::abs(preds[i].time_s - g) <= 0.5;
    CHECK(reachable == flags[i]);
  }
  CHECK(average_precision(flags, 2) == 5.0 / 6.0);
}

TEST_CASE("unbounded tolerance counts per window") {
  const std::vector<ScoredTime> preds = {{0.1, 0.5}, {4.9, 0.9}, {2.0, 0.7}};
  const std::vector<double> gt = {1.0, 3.0};
  CHECK(match_window(preds, gt, kInfiniteDelta) == std::vector<bool>{false, true, true});
  CHECK(match_window(preds, {}, 1.0) == std::vector<bool>{false, false, false});
}

TEST_CASE("boundary distance of exactly half the tolerance matches") {
  const std::vector<ScoredTime> preds = {{1.5, 1.0}};
  const std::vector<double> gt = {1.0};
  CHECK(match_window(preds, gt, 1.0)[0]);
  const std::vector<ScoredTime> far = {{1.5001, 1.0}};
  CHECK_FALSE(match_window(far, gt, 1.0)[0]);
}

TEST_CASE("average precision edge cases") {
  CHECK(average_precision({true, true}, 2) == 1.0);
  CHECK(average_precision({}, 3) == 0.0);
  CHECK_FALSE(average_precision({true}, 0).has_value());
  CHECK(average_precision({false, true}, 1) == 0.5);
  CHECK(average_precision({true, false, false, true}, 4) == doctest::Approx((1.0 + 0.5) / 4));
}

TEST_CASE("perfect predictions score 1 and empty predictions score 0") {
  EvalClipSet set;
  set.clips = {clip_with("a", {{ActionClass::kPass, 1000}, {ActionClass::kShot, 4000}}),
               clip_with("b", {{ActionClass::kPass, 0}}, 5000)};
  std::vector<Prediction> preds = {{"a", ActionClass::kPass, 1.0, 1.0},
                                   {"a", ActionClass::kShot, 4.0, 1.0},
                                   {"b", ActionClass::kPass, 0.0, 1.0}};
  const auto perfect = evaluate(preds, set);
  CHECK(perfect.average == 1.0);
  for (const auto& dr : perfect.deltas) {
    CHECK(dr.map == 1.0);
    CHECK(dr.per_class[class_index(ActionClass::kPass)].ap == 1.0);
    CHECK_FALSE(dr.per_class[class_index(ActionClass::kDrive)].ap.has_value());
  }
  const auto empty = evaluate({}, set);
  CHECK(empty.average == 0.0);
  CHECK(empty.deltas[0].per_class[0].ap == 0.0);
  CHECK(evaluate({}, EvalClipSet{}).average == 0.0);
}

TEST_CASE("invalid predictions are rejected") {
  EvalClipSet set;
  set.clips = {clip_with("a", {})};
  const std::vector<std::vector<Prediction>> bad = {
      {{"zz", ActionClass::kPass, 1.0, 0.5}},
      {{"a", ActionClass::kGoal, 1.0, 0.5}},
      {{"a", ActionClass::kPass, 5.5, 0.5}},
      {{"a", ActionClass::kPass, -0.1, 0.5}},
      {{"a", ActionClass::kPass, 1.0, 1.5}},
  };
  for (const auto& b : bad) CHECK_THROWS_AS(evaluate(b, set), Error);
}

TEST_CASE("evaluation matches the naive reference evaluator") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_instance(rng, 1 + static_cast<int>(rng() % kNumClasses));
    check_against_reference(inst, evaluate(inst.preds, inst.set));
  }
}

TEST_CASE("shuffling predictions or clips never changes the report") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = random_instance(rng, 3);
    const auto before = to_json(evaluate(inst.preds, inst.set)).dump();
    std::shuffle(inst.preds.begin(), inst.preds.end(), rng);
    CHECK(to_json(evaluate(inst.preds, inst.set)).dump() == before);
    std::shuffle(inst.set.clips.begin(), inst.set.clips.end(), rng);
    CHECK(to_json(evaluate(inst.preds, inst.set)).dump() == before);
  }
}

TEST_CASE("positive confidence scaling leaves flags and APs unchanged") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = random_instance(rng, 4);
    const auto base = evaluate(inst.preds, inst.set);
    for (auto& p : inst.preds) p.confidence *= 0.5;
    const auto scaled = evaluate(inst.preds, inst.set);
    for (std::size_t d = 0; d < base.deltas.size(); ++d) {
      for (int c = 0; c < kNumClasses; ++c) {
        CHECK(base.deltas[d].per_class[c].ap == scaled.deltas[d].per_class[c].ap);
        CHECK(base.deltas[d].per_class[c].tp == scaled.deltas[d].per_class[c].tp);
      }
    }
  }
}

TEST_CASE("pairs matchable at a tolerance stay matchable at larger ones") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::vector<ScoredTime> p = {{u(rng), 1.0}};
    const std::vector<double> g = {u(rng)};
    bool prev = false;
    for (double d : kDefaultDeltas) {
      const bool now = match_window(p, g, d)[0];
      CHECK((!prev || now));
      prev = now;
    }
  }
}

TEST_CASE("AP is one exactly when all gt match and no FP outranks the last TP") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<bool> flags(rng() % 8);
    for (std::size_t i = 0; i < flags.size(); ++i) flags[i] = rng() % 3 != 0;
    const auto tp = std::count(flags.begin(), flags.end(), true);
    const std::int64_t gt = tp + static_cast<std::int64_t>(rng() % 2);
    if (gt == 0) continue;
    std::size_t last_tp = 0;
    for (std::size_t i = 0; i < flags.size(); ++i) if (flags[i]) last_tp = i + 1;
    const bool clean = std::all_of(flags.begin(), flags.begin() + last_tp, [](bool b) { return b; });
    CHECK((*average_precision(flags, gt) == 1.0) == (tp == gt && clean));
  }
}

TEST_CASE("report renderings") {
  EvalClipSet set;
  set.anticipation_s = 5.0;
  set.clips = {clip_with("a", {{ActionClass::kPass, 1000}})};
  const std::vector<Prediction> preds = {{"a", ActionClass::kPass, 1.2, 0.9}};
  const auto report = evaluate(preds, set);
  const auto j = to_json(report);
  CHECK(j["average"] == 1.0);
  CHECK(j["deltas"][5]["delta"] == "inf");
  const auto csv = report_csv(report);
  CHECK(csv.rfind("delta,label,ap,tp,fp,gt\n", 0) == 0);
  CHECK(csv.find("1,Pass,1.000000,1,0,1") != std::string::npos);
  const auto md = report_markdown(report);
  CHECK(md.find("| Pass |") != std::string::npos);
  CHECK(md.find("100.00") != std::string::npos);
  CHECK(md.find("**mAP**") != std::string::npos);
}

TEST_CASE("prediction files round-trip") {
  std::vector<Prediction> preds = {{"b", ActionClass::kShot, 1.25, 0.5},
                                   {"a", ActionClass::kPass, 3.0, 0.75}};
  const auto back = predictions_from_json(nlohmann::json::parse(predictions_to_json(preds).dump()));
  CHECK(back == preds);
  sort_predictions(preds);
  CHECK(preds[0].clip_id == "a");
  CHECK(predictions_from_json(nlohmann::json::array()).empty());
  CHECK_THROWS_AS(predictions_from_json(nlohmann::json{{"x", 1}}), ParseError);
  CHECK_THROWS_AS(
      predictions_from_json(nlohmann::json::array({{{"clip_id", "a"}, {"label", "Dribble"},
                                                    {"time_s", 1.0}, {"confidence", 0.5}}})),
      ParseError);
}

}  // TEST_SUITE
