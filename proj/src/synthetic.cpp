// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "antbench/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "antbench/baselines.hpp"

namespace antbench {
namespace {

// Train-split counts of the public ball-action labels, all twelve classes.
constexpr std::array<int, kNumRawClasses> kClassFrequency = {
    2679, 2297, 465, 404, 331, 213, 177, 128, 100, 34, 15, 6};

ActionClass sample_class(DeterministicRng& rng, bool include_excluded) {
  const int n = include_excluded ? kNumRawClasses : kNumClasses;
  int total = 0;
  for (int c = 0; c < n; ++c) total += kClassFrequency[c];
  auto pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(total)));
  for (int c = 0; c < n; ++c) {
    if (pick < kClassFrequency[c]) return class_from_index(c);
    pick -= kClassFrequency[c];
  }
  return ActionClass::kPass;
}

}  // namespace

GameAnnotations make_synthetic_game(const SyntheticGameSpec& spec) {
  GameAnnotations game;
  game.game_id = spec.game_id;
  game.split = spec.split;
  game.half_duration_ms = {spec.half_duration_ms, spec.half_duration_ms};
  DeterministicRng rng(spec.seed);
  for (int half = 1; half <= 2; ++half) {
    std::int64_t t = 0;
    while (true) {
      const double gap_s = -std::log(1.0 - rng.uniform()) * spec.mean_gap_s;
      t += std::max(spec.min_gap_ms, static_cast<std::int64_t>(std::llround(gap_s * 1000.0)));
      if (t > spec.half_duration_ms) break;
      game.actions.push_back({game.game_id, half, t,
                              sample_class(rng, spec.include_excluded)});
    }
  }
  std::stable_sort(game.actions.begin(), game.actions.end(), action_less);
  return game;
}

}  // namespace antbench
