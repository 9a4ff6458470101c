// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "antbench/annotations.hpp"

namespace antbench {

struct SyntheticGameSpec {
  std::string game_id = "synthetic/game_01";
  Split split = Split::kTest;
  std::int64_t half_duration_ms = 600'000;
  double mean_gap_s = 3.3;            // mean spacing between actions
  std::int64_t min_gap_ms = 200;
  bool include_excluded = false;      // sprinkle FreeKick / Goal labels
  std::uint64_t seed = 1;
};

/// Generates a game with class frequencies following the public train-split
/// distribution and exponential inter-action gaps. Deterministic in `seed`.
GameAnnotations make_synthetic_game(const SyntheticGameSpec& spec);

}  // namespace antbench
