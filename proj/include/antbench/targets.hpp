// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"

#include "antbench/config.hpp"
#include "antbench/slot_output.hpp"
#include "antbench/windowing.hpp"

namespace antbench {

/// Supervision for one query slot.
struct SlotTarget {
  std::optional<std::size_t> gt_index;  // index into the window's gt list
  int actionness = 0;
  /// Softmax target index: a class, or num_classes for EoS / background.
  std::optional<int> class_target;
  std::vector<std::uint8_t> multi_hot;  // QBCE only
  std::optional<double> time_target;    // normalized, in [0, 1)
  /// False for QEOS slots after the EoS slot; they receive no loss at all.
  bool supervised = true;

  friend bool operator==(const SlotTarget&, const SlotTarget&) = default;
};

struct Assignment {
  HeadVariant variant = HeadVariant::kQAct;
  int num_classes = kNumClasses;
  std::vector<SlotTarget> slots;
  bool truncated = false;  // more gt actions than slots

  std::size_t num_paired() const;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Slot i takes gt i for i < min(q, |gt|); the rest are non-actions.
/// `gt` must be sorted by offset. Time targets are offset / T_a.
Assignment sequential_assign(std::span<const TimedLabel> gt, int queries,
                             double anticipation_s);

/// Builds targets for `variant`. QHungTime and QHungClass need the current
/// model outputs (one per query) to form matching costs:
///   time:  |decoded slot time - gt time| / T_a
///   class: 1 - p_slot(gt class)
/// Throws std::invalid_argument when those outputs are missing or malformed,
/// and when a gt offset lies outside [0, T_a).
Assignment assign_for_variant(HeadVariant variant,
                              std::span<const TimedLabel> gt,
                              std::span<const SlotOutput> outputs,
                              const BenchConfig& cfg);

/// Anchor bin of an offset: floor(offset * q / T_a).
int anchor_bin(std::int64_t offset_ms, int queries,
               std::int64_t anticipation_ms);

nlohmann::json to_json(const Assignment& a);

}  // namespace antbench
