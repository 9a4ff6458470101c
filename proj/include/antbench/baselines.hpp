// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "antbench/annotations.hpp"
#include "antbench/metrics.hpp"
#include "antbench/windowing.hpp"

namespace antbench {

/// Portable seeded generator. Raw bits come from std::mt19937_64, whose
/// output sequence is fixed by the C++ standard; the conversions below are
/// spelled out so other implementations can reproduce them:
///   uniform()   = (next() >> 11) * 2^-53                    in [0, 1)
///   below(n)    = floor(uniform() * n)
///   normal()    = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)        (Box-Muller,
///                 one fresh (u1, u2) pair per call)
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  std::uint64_t below(std::uint64_t n);
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; clip k of a run uses derive_seed(seed, k).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

enum class BaselineKind : std::uint8_t { kOracle, kPrior, kRandom };

std::string_view baseline_name(BaselineKind k);
std::optional<BaselineKind> parse_baseline(std::string_view name);

struct BaselineSpec {
  BaselineKind kind = BaselineKind::kOracle;
  double noise_std_s = 0.0;
  double drop_prob = 0.0;
  std::uint64_t seed = 0;
  int prior_top_k = kNumClasses;   // classes emitted by the prior baseline
  int prior_per_class = 5;         // evenly spaced guesses per class
  int random_per_clip = 8;         // predictions per clip, random baseline

  void validate() const;  // throws std::invalid_argument
};

/// Every gt action, jittered by N(0, noise_std_s) and clamped to the window,
/// with confidence 1. Each action is dropped with probability drop_prob.
std::vector<Prediction> oracle_predictor(const EvalClipSet& clips,
                                         const BaselineSpec& spec);

/// The top-k most frequent training classes at evenly spaced times with
/// confidence count_c / max count.
std::vector<Prediction> prior_predictor(const ClassStats& train_stats,
                                        const EvalClipSet& clips,
                                        const BaselineSpec& spec);

/// Predictions drawn uniformly at random over the window.
std::vector<Prediction> random_predictor(const EvalClipSet& clips,
                                         const BaselineSpec& spec);

}  // namespace antbench
