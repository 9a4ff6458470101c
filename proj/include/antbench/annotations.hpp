// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "antbench/action_class.hpp"
#include "antbench/rational.hpp"

namespace antbench {

enum class Split : std::uint8_t { kTrain, kValid, kTest, kChallenge };
inline constexpr int kNumSplits = 4;

std::string_view split_name(Split s);
std::optional<Split> parse_split(std::string_view name);

/// One annotated on-ball event.
struct ActionInstance {
  std::string game_id;
  int half = 1;               // 1 or 2
  std::int64_t time_ms = 0;   // from the start of the half
  ActionClass label = ActionClass::kPass;

  friend bool operator==(const ActionInstance&, const ActionInstance&) = default;
};

/// Orders by (half, time_ms), then canonical class name.
bool action_less(const ActionInstance& a, const ActionInstance& b);

struct GameAnnotations {
  std::string game_id;
  Split split = Split::kTest;
  std::array<std::optional<std::int64_t>, 2> half_duration_ms;
  std::vector<ActionInstance> actions;  // sorted by action_less

  friend bool operator==(const GameAnnotations&,
                         const GameAnnotations&) = default;
};

/// Reads one per-game label file. The game id is taken from the document's
/// "gameId" field when present, else from the file's parent directory name.
GameAnnotations parse_annotations(const std::filesystem::path& path);

/// Parses an already-loaded label document. `fallback_game_id` is used when
/// the document carries no "gameId".
GameAnnotations parse_annotations_json(const nlohmann::json& doc,
                                       std::string_view fallback_game_id);

/// Canonical label document; parse_annotations_json(to_json(g)) == g.
nlohmann::json to_json(const GameAnnotations& game);

/// Formats a time as the "<half> - MM:SS.mmm" gameTime string.
std::string format_game_time(int half, std::int64_t time_ms);

/// Drops FreeKick and Goal, keeping the order of everything else.
GameAnnotations filter_classes(GameAnnotations game);

using ClassCounts = std::array<std::int64_t, kNumClasses>;
using SplitClassCounts = std::array<ClassCounts, kNumSplits>;

struct ClassStats {
  SplitClassCounts counts{};              // [split][class]
  std::array<Rational, kNumClasses> weights;  // from the train split

  const ClassCounts& train_counts() const {
    return counts[static_cast<int>(Split::kTrain)];
  }
  double weight(ActionClass c) const {
    return weights[class_index(c)].to_double();
  }
  std::vector<double> weight_vector() const;
};

/// weight_c = mean(count) / count_c, exactly. Throws antbench::Error when
/// any count is zero or the span is empty.
std::vector<Rational> inverse_frequency_weights(
    std::span<const std::int64_t> counts);

/// Counts retained actions per split and derives train-split weights.
/// The corpus must already be filtered.
ClassStats class_stats(std::span<const GameAnnotations> corpus);
ClassStats class_stats_from_counts(const SplitClassCounts& counts);

/// Reads a counts table {"classes": [names...], "counts": {split: [n...]}}.
/// Columns for Free Kick and Goal are dropped, as filter_classes would.
SplitClassCounts split_counts_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const ClassStats& stats);

}  // namespace antbench
