// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "antbench/annotations.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <regex>
#include <string>

#include "antbench/error.hpp"

namespace antbench {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, kNumSplits> kSplitNames = {
    "train", "valid", "test", "challenge"};

[[noreturn]] void fail_record(std::size_t index, const std::string& what) {
  throw ParseError("record " + std::to_string(index) + ": " + what);
}

struct GameTime {
  int half = 1;
  std::int64_t time_ms = 0;
  bool has_millis = false;
};

std::optional<GameTime> parse_game_time(const std::string& text) {
  static const std::regex kPattern(
      R"(^\s*([12])\s*-\s*(\d+):([0-5]\d)(?:\.(\d{3}))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, kPattern)) return std::nullopt;
  GameTime gt;
  gt.half = std::stoi(m[1].str());
  const std::int64_t minutes = std::stoll(m[2].str());
  const std::int64_t seconds = std::stoll(m[3].str());
  gt.time_ms = (minutes * 60 + seconds) * 1000;
  if (m[4].matched) {
    gt.time_ms += std::stoll(m[4].str());
    gt.has_millis = true;
  }
  return gt;
}

std::int64_t parse_position(const json& value, std::size_t index) {
  if (value.is_number_integer()) {
    const auto v = value.get<std::int64_t>();
    if (v < 0) fail_record(index, "negative time " + std::to_string(v));
    return v;
  }
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    std::string_view sv = s;
    while (!sv.empty() && sv.front() == ' ') sv.remove_prefix(1);
    while (!sv.empty() && sv.back() == ' ') sv.remove_suffix(1);
    if (!sv.empty() && sv.front() == '-') {
      fail_record(index, "negative time \"" + s + "\"");
    }
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (sv.empty() || ec != std::errc() || ptr != sv.data() + sv.size()) {
      fail_record(index, "malformed position \"" + s + "\"");
    }
    return v;
  }
  fail_record(index, "position must be an integer or a string");
}

}  // namespace

std::string_view split_name(Split s) { return kSplitNames[static_cast<int>(s)]; }

std::optional<Split> parse_split(std::string_view name) {
  for (int i = 0; i < kNumSplits; ++i) {
    if (kSplitNames[i] == name) return static_cast<Split>(i);
  }
  if (name == "validation") return Split::kValid;
  return std::nullopt;
}

bool action_less(const ActionInstance& a, const ActionInstance& b) {
  if (a.half != b.half) return a.half < b.half;
  if (a.time_ms != b.time_ms) return a.time_ms < b.time_ms;
  return class_name_less(a.label, b.label);
}

std::string format_game_time(int half, std::int64_t time_ms) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%d - %02lld:%02lld.%03lld", half,
                static_cast<long long>(time_ms / 60000),
                static_cast<long long>(time_ms / 1000 % 60),
                static_cast<long long>(time_ms % 1000));
  return buf;
}

GameAnnotations parse_annotations_json(const json& doc,
                                       std::string_view fallback_game_id) {
  if (!doc.is_object()) throw ParseError("label document must be an object");
  GameAnnotations game;
  game.game_id = std::string(fallback_game_id);
  if (auto it = doc.find("gameId"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("gameId must be a string");
    game.game_id = it->get<std::string>();
  }
  if (game.game_id.empty()) throw ParseError("missing game id");

  if (auto it = doc.find("split"); it != doc.end()) {
    const auto split = it->is_string() ? parse_split(it->get<std::string>())
                                       : std::nullopt;
    if (!split) throw ParseError("split must be one of train|valid|test|challenge");
    game.split = *split;
  }

  if (auto it = doc.find("halfDurationsMs"); it != doc.end()) {
    if (!it->is_array() || it->size() != 2) {
      throw ParseError("halfDurationsMs must be an array of two entries");
    }
    for (int h = 0; h < 2; ++h) {
      const json& d = (*it)[h];
      if (d.is_null()) continue;
      if (!d.is_number_integer() || d.get<std::int64_t>() < 0) {
        throw ParseError("halfDurationsMs entries must be non-negative integers");
      }
      game.half_duration_ms[h] = d.get<std::int64_t>();
    }
  }

  const auto ann = doc.find("annotations");
  if (ann == doc.end() || !ann->is_array()) {
    throw ParseError("missing \"annotations\" array");
  }

  game.actions.reserve(ann->size());
  for (std::size_t i = 0; i < ann->size(); ++i) {
    const json& rec = (*ann)[i];
    if (!rec.is_object()) fail_record(i, "not an object");

    const auto gt_it = rec.find("gameTime");
    if (gt_it == rec.end() || !gt_it->is_string()) {
      fail_record(i, "missing gameTime");
    }
    const std::string& gt_text = gt_it->get_ref<const std::string&>();
    const auto game_time = parse_game_time(gt_text);
    if (!game_time) fail_record(i, "malformed gameTime \"" + gt_text + "\"");

    const auto label_it = rec.find("label");
    if (label_it == rec.end() || !label_it->is_string()) {
      fail_record(i, "missing label");
    }
    const auto label = parse_class_label(label_it->get<std::string>());
    if (!label) {
      fail_record(i, "unknown label \"" + label_it->get<std::string>() + "\"");
    }

    std::int64_t time_ms = game_time->time_ms;
    if (auto pos = rec.find("position"); pos != rec.end()) {
      time_ms = parse_position(*pos, i);
      // gameTime is the same instant at second (or millisecond) resolution.
      const std::int64_t slack = game_time->has_millis ? 0 : 999;
      if (time_ms < game_time->time_ms || time_ms > game_time->time_ms + slack) {
        fail_record(i, "position " + std::to_string(time_ms) +
                           " disagrees with gameTime \"" + gt_text + "\"");
      }
    }

    const auto& duration = game.half_duration_ms[game_time->half - 1];
    if (duration && time_ms > *duration) {
      fail_record(i, "time " + std::to_string(time_ms) +
                         " ms exceeds half duration " +
                         std::to_string(*duration) + " ms");
    }
    game.actions.push_back({game.game_id, game_time->half, time_ms, *label});
  }
  std::stable_sort(game.actions.begin(), game.actions.end(), action_less);
  return game;
}

GameAnnotations parse_annotations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  std::string fallback = path.parent_path().filename().string();
  if (fallback.empty()) fallback = path.stem().string();
  try {
    return parse_annotations_json(doc, fallback);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

json to_json(const GameAnnotations& game) {
  json doc;
  doc["gameId"] = game.game_id;
  doc["split"] = std::string(split_name(game.split));
  if (game.half_duration_ms[0] || game.half_duration_ms[1]) {
    json d = json::array();
    for (const auto& h : game.half_duration_ms) {
      d.push_back(h ? json(*h) : json(nullptr));
    }
    doc["halfDurationsMs"] = std::move(d);
  }
  json ann = json::array();
  for (const auto& a : game.actions) {
    ann.push_back({{"gameTime", format_game_time(a.half, a.time_ms)},
                   {"label", std::string(class_name(a.label))},
                   {"position", std::to_string(a.time_ms)}});
  }
  doc["annotations"] = std::move(ann);
  return doc;
}

GameAnnotations filter_classes(GameAnnotations game) {
  std::erase_if(game.actions,
                [](const ActionInstance& a) { return !is_retained(a.label); });
  return game;
}

std::vector<double> ClassStats::weight_vector() const {
  std::vector<double> out;
  out.reserve(kNumClasses);
  for (const auto& w : weights) out.push_back(w.to_double());
  return out;
}

std::vector<Rational> inverse_frequency_weights(
    std::span<const std::int64_t> counts) {
  if (counts.empty()) throw Error("class weights: no classes");
  std::int64_t total = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] <= 0) {
      throw Error("class weights: class " + std::to_string(c) +
                  " has no training instances");
    }
    total += counts[c];
  }
  const auto n = static_cast<std::int64_t>(counts.size());
  std::vector<Rational> weights;
  weights.reserve(counts.size());
  for (const std::int64_t count : counts) {
    weights.emplace_back(total, n * count);  // (total / n) / count
  }
  return weights;
}

ClassStats class_stats_from_counts(const SplitClassCounts& counts) {
  ClassStats stats;
  stats.counts = counts;
  const auto w = inverse_frequency_weights(stats.train_counts());
  std::copy(w.begin(), w.end(), stats.weights.begin());
  return stats;
}

ClassStats class_stats(std::span<const GameAnnotations> corpus) {
  SplitClassCounts counts{};
  for (const auto& game : corpus) {
    for (const auto& a : game.actions) {
      if (!is_retained(a.label)) {
        throw Error("class_stats: game " + game.game_id + " still contains " +
                    std::string(class_name(a.label)) +
                    "; run filter_classes first");
      }
      ++counts[static_cast<int>(game.split)][class_index(a.label)];
    }
  }
  return class_stats_from_counts(counts);
}

SplitClassCounts split_counts_from_json(const json& doc) {
  SplitClassCounts counts{};
  try {
    const auto names = doc.at("classes").get<std::vector<std::string>>();
    std::vector<ActionClass> columns;
    for (const auto& n : names) {
      const auto c = parse_class_label(n);
      if (!c) throw ParseError("counts table: unknown class \"" + n + "\"");
      columns.push_back(*c);
    }
    for (const auto& [split_text, row] : doc.at("counts").items()) {
      const auto split = parse_split(split_text);
      if (!split) throw ParseError("counts table: unknown split \"" + split_text + "\"");
      const auto values = row.get<std::vector<std::int64_t>>();
      if (values.size() != columns.size()) {
        throw ParseError("counts table: split " + split_text + " has " +
                         std::to_string(values.size()) + " entries for " +
                         std::to_string(columns.size()) + " classes");
      }
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0) throw ParseError("counts table: negative count");
        if (is_retained(columns[i])) {
          counts[static_cast<int>(*split)][class_index(columns[i])] += values[i];
        }
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("counts table: ") + e.what());
  }
  return counts;
}

json to_json(const ClassStats& stats) {
  json classes = json::array();
  for (int c = 0; c < kNumClasses; ++c) {
    json counts;
    for (int s = 0; s < kNumSplits; ++s) {
      counts[std::string(kSplitNames[s])] = stats.counts[s][c];
    }
    const Rational& w = stats.weights[c];
    classes.push_back({{"label", std::string(class_name(class_from_index(c)))},
                       {"counts", std::move(counts)},
                       {"weight", w.to_double()},
                       {"weight_num", w.num},
                       {"weight_den", w.den}});
  }
  return {{"classes", std::move(classes)}};
}

}  // namespace antbench
