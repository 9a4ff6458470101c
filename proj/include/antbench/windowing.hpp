// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "antbench/action_class.hpp"
#include "antbench/annotations.hpp"
#include "antbench/config.hpp"

namespace antbench {

/// An action re-expressed relative to the start of a window.
struct TimedLabel {
  ActionClass label = ActionClass::kPass;
  std::int64_t offset_ms = 0;

  double offset_s() const { return static_cast<double>(offset_ms) / 1000.0; }
  friend bool operator==(const TimedLabel&, const TimedLabel&) = default;
};

/// An evaluation unit: the (up to 30 s) observed span and the anticipation
/// window that immediately follows it. All spans are half-open.
struct EvalClip {
  std::string clip_id;
  std::string game_id;
  int half = 1;
  std::int64_t context_start_ms = 0;
  std::int64_t context_end_ms = 0;
  std::int64_t anticipation_start_ms = 0;
  std::int64_t anticipation_end_ms = 0;
  bool partial = false;  // window extends past the end of the half
  std::vector<TimedLabel> gt;

  friend bool operator==(const EvalClip&, const EvalClip&) = default;
};

/// The content of an evaluation-clips file.
struct EvalClipSet {
  double anticipation_s = 5.0;
  double context_max_s = 30.0;
  std::vector<EvalClip> clips;  // ordered by (game_id, half, start)

  const EvalClip* find(std::string_view clip_id) const;
  friend bool operator==(const EvalClipSet&, const EvalClipSet&) = default;
};

std::string make_clip_id(std::string_view game_id, int half,
                         std::int64_t anticipation_start_ms);

/// Half duration used for tiling: the declared one, else last action + T_a.
std::int64_t effective_half_duration_ms(const GameAnnotations& game, int half,
                                        const BenchConfig& cfg);

/// Tiles each half with anticipation windows of length T_a starting at 0, so
/// every action lands in exactly one window. Context spans are clipped at the
/// half start, so early windows see less than 30 s.
std::vector<EvalClip> make_eval_clips(const GameAnnotations& game,
                                      const BenchConfig& cfg);

/// Builds a clip set over several games with deterministic ordering.
/// Throws antbench::Error on duplicate game ids.
EvalClipSet make_eval_clip_set(std::span<const GameAnnotations> games,
                               const BenchConfig& cfg);

nlohmann::json to_json(const EvalClipSet& set);
EvalClipSet eval_clips_from_json(const nlohmann::json& doc);
EvalClipSet read_eval_clips(const std::filesystem::path& path);

/// Per-window action occupancy (mean and max |gt| per class and overall).
struct WindowOccupancy {
  std::size_t windows = 0;
  std::array<double, kNumClasses> mean_per_class{};
  std::array<std::size_t, kNumClasses> max_per_class{};
  double mean_total = 0.0;
  std::size_t max_total = 0;
};

WindowOccupancy window_occupancy(std::span<const EvalClip> clips);

struct TrainClip {
  std::string game_id;
  int half = 1;
  std::int64_t context_start_ms = 0;
  std::int64_t context_end_ms = 0;
  std::vector<TimedLabel> context_actions;  // offsets from context start
  std::vector<TimedLabel> future_actions;   // offsets from context end

  std::string clip_id() const;
};

/// Slides a T_c window with a stride of T_c / 10 over each half. A clip is
/// emitted while its context fits in the half; future actions cover the next
/// T_a seconds.
std::vector<TrainClip> make_train_clips(const GameAnnotations& game,
                                        const BenchConfig& cfg);

/// Frame-level segmentation labels: 0 is background, c + 1 is class c.
struct SegGrid {
  std::vector<int> labels;
};

/// Frame index of a context offset, rounding half up and clamped to the grid.
int frame_index(std::int64_t offset_ms, const BenchConfig& cfg);

/// Labels every frame within `dilation` frames of an action with that
/// action's class. A frame covered by several actions takes the nearest
/// centre; equal distances go to the earlier action.
SegGrid segmentation_targets(const TrainClip& clip, const BenchConfig& cfg);

}  // namespace antbench
