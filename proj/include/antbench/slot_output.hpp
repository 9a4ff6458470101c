// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace antbench {

/// Prediction-head variants. QAct is the reference head (actionness, class,
/// time per query). QHungTime / QHungClass share its outputs but pair queries
/// with ground truth by minimum-cost matching.
enum class HeadVariant : std::uint8_t {
  kQAct,
  kQEOS,
  kQBckg,
  kQBCE,
  kQHungTime,
  kQHungClass,
  kAnchors,
};

std::string_view variant_name(HeadVariant v);
std::optional<HeadVariant> parse_variant(std::string_view name);

/// True for heads with a separate actionness output.
bool has_actionness(HeadVariant v);

/// Width of the class output: C, or C + 1 for the EoS / background heads.
int class_width(HeadVariant v, int num_classes);

/// Raw output of one query slot.
struct SlotOutput {
  double actionness = 0.0;          // ignored by heads without actionness
  std::vector<double> class_probs;  // softmax, or per-class sigmoids for QBCE
  double time_raw = 0.0;            // log-space normalized time
};

/// Throws std::invalid_argument when `out` violates the head's contract:
/// probabilities outside [0, 1], wrong width, or a softmax that does not sum
/// to 1 within 1e-9.
void validate_slot_output(const SlotOutput& out, HeadVariant v,
                          int num_classes);

/// Offset added before taking the log of a normalized time.
inline constexpr double kTimeEpsilon = 1e-6;

/// Log-space target for a normalized time in [0, 1).
double encode_time(double normalized);

struct DecodedTime {
  double normalized = 0.0;  // in [0, 1]
  bool clamped = false;
};

/// Inverse of encode_time(), clamped to [0, 1].
DecodedTime decode_time(double raw);

SlotOutput slot_output_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SlotOutput& out);

}  // namespace antbench
