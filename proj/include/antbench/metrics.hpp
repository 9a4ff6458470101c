// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "antbench/action_class.hpp"
#include "antbench/config.hpp"
#include "antbench/slot_output.hpp"
#include "antbench/windowing.hpp"

namespace antbench {

/// One anticipated action.
struct Prediction {
  std::string clip_id;
  ActionClass label = ActionClass::kPass;
  double time_s = 0.0;      // offset into the anticipation window
  double confidence = 0.0;  // in [0, 1]

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

inline constexpr double kInfiniteDelta =
    std::numeric_limits<double>::infinity();
inline constexpr std::array<double, 6> kDefaultDeltas = {
    1.0, 2.0, 3.0, 4.0, 5.0, kInfiniteDelta};

/// Parses "1,2,3,4,5,inf"; throws std::invalid_argument on bad tokens.
std::vector<double> parse_deltas(std::string_view text);
std::string format_delta(double delta);

struct DecodeResult {
  std::vector<Prediction> predictions;
  std::size_t clamped_times = 0;
};

/// Turns one clip's slot outputs into scored predictions.
///   QAct / QHung*: every class of every slot, confidence = actionness * p_c.
///   QEOS: slots from the first one whose argmax is EoS onwards are dropped.
///   QBckg / QBCE: every slot kept, the background entry is never emitted.
///   Anchors: as QAct, time = bin start + decoded fraction * bin length.
DecodeResult decode_predictions(const std::string& clip_id,
                                std::span<const SlotOutput> outputs,
                                HeadVariant variant, const BenchConfig& cfg);

/// A same-class prediction inside one window.
struct ScoredTime {
  double time_s = 0.0;
  double confidence = 0.0;
};

/// Greedy matching of one clip's predictions against its gt times for one
/// class. Predictions are visited by descending confidence (ties: earlier
/// time, then input order) and each claims the nearest unmatched gt within
/// delta / 2 seconds (closed). With delta = inf any unmatched gt qualifies.
/// Returns TP flags in input order.
std::vector<bool> match_window(std::span<const ScoredTime> preds,
                               std::span<const double> gt_times,
                               double delta);

/// All-point interpolated AP of a ranked TP/FP list (best first). Returns
/// nullopt when total_gt is zero.
std::optional<double> average_precision(const std::vector<bool>& ranked_tp,
                                        std::int64_t total_gt);

struct ClassResult {
  std::optional<double> ap;  // nullopt: no gt, excluded from mAP
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t gt = 0;
};

struct DeltaResult {
  double delta = 0.0;
  std::array<ClassResult, kNumClasses> per_class;
  double map = 0.0;  // mean AP over classes with gt
};

struct EvalReport {
  std::vector<DeltaResult> deltas;
  double average = 0.0;  // mean of map over deltas
  std::size_t num_clips = 0;
  std::size_t num_predictions = 0;
};

/// Scores predictions against a clip set. The result does not depend on the
/// order of `preds`. Throws antbench::Error on unknown clip ids, retained
/// class violations, confidences outside [0, 1] or times outside [0, T_a].
EvalReport evaluate(std::span<const Prediction> preds, const EvalClipSet& gt,
                    std::span<const double> deltas = kDefaultDeltas);

nlohmann::json to_json(const EvalReport& report);
std::string report_csv(const EvalReport& report);
/// Per-class table with one column per delta and an average column.
std::string report_markdown(const EvalReport& report);

nlohmann::json predictions_to_json(std::span<const Prediction> preds);
std::vector<Prediction> predictions_from_json(const nlohmann::json& doc);
std::vector<Prediction> read_predictions(const std::filesystem::path& path);

/// Sorts into the canonical file order (clip, class, time, confidence desc).
void sort_predictions(std::vector<Prediction>& preds);

}  // namespace antbench
