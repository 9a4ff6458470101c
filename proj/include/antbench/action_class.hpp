// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace antbench {

/// On-ball action labels of the ball-action annotation format. The first ten
/// form the evaluated closed set; FreeKick and Goal are recognized while
/// parsing and dropped by filter_classes().
enum class ActionClass : std::uint8_t {
  kPass,
  kDrive,
  kHighPass,
  kHeader,
  kOut,
  kThrowIn,
  kCross,
  kBallPlayerBlock,
  kShot,
  kSuccessfulTackle,
  kFreeKick,
  kGoal,
};

/// Number of retained (evaluated) classes.
inline constexpr int kNumClasses = 10;
inline constexpr int kNumRawClasses = 12;

inline constexpr std::array<ActionClass, kNumClasses> kRetainedClasses = {
    ActionClass::kPass,        ActionClass::kDrive,
    ActionClass::kHighPass,    ActionClass::kHeader,
    ActionClass::kOut,         ActionClass::kThrowIn,
    ActionClass::kCross,       ActionClass::kBallPlayerBlock,
    ActionClass::kShot,        ActionClass::kSuccessfulTackle,
};

constexpr int class_index(ActionClass c) { return static_cast<int>(c); }

constexpr bool is_retained(ActionClass c) {
  return class_index(c) < kNumClasses;
}

/// Inverse of class_index(); throws std::out_of_range outside [0, 12).
ActionClass class_from_index(int index);

/// Canonical display name ("Pass", "High Pass", "Throw-in", ...).
std::string_view class_name(ActionClass c);

/// Accepts canonical names and the upper-case spellings used by the public
/// label files ("THROW IN", "PLAYER SUCCESSFUL TACKLE", "FREE KICK", ...).
/// Matching ignores case and treats '-', '_' and runs of spaces alike.
std::optional<ActionClass> parse_class_label(std::string_view label);

/// Orders by canonical name; used for deterministic tie-breaking.
bool class_name_less(ActionClass a, ActionClass b);

}  // namespace antbench
