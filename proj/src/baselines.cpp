// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "antbench/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace antbench {

double DeterministicRng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t DeterministicRng::below(std::uint64_t n) {
  return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
}

double DeterministicRng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(1.0 - u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string_view baseline_name(BaselineKind k) {
  switch (k) {
    case BaselineKind::kOracle: return "oracle";
    case BaselineKind::kPrior: return "prior";
    case BaselineKind::kRandom: return "random";
  }
  return "?";
}

std::optional<BaselineKind> parse_baseline(std::string_view name) {
  for (auto k : {BaselineKind::kOracle, BaselineKind::kPrior, BaselineKind::kRandom}) {
    if (baseline_name(k) == name) return k;
  }
  return std::nullopt;
}

void BaselineSpec::validate() const {
  if (!std::isfinite(noise_std_s) || noise_std_s < 0.0) {
    throw std::invalid_argument("noise_std_s must be >= 0");
  }
  if (!(drop_prob >= 0.0 && drop_prob <= 1.0)) {
    throw std::invalid_argument("drop_prob must be in [0, 1]");
  }
  if (prior_top_k < 1 || prior_top_k > kNumClasses) {
    throw std::invalid_argument("prior_top_k must be in [1, 10]");
  }
  if (prior_per_class < 1) throw std::invalid_argument("prior_per_class must be >= 1");
  if (random_per_clip < 0) throw std::invalid_argument("random_per_clip must be >= 0");
}

std::vector<Prediction> oracle_predictor(const EvalClipSet& clips,
                                         const BaselineSpec& spec) {
  spec.validate();
  const double window = clips.anticipation_s;
  std::vector<Prediction> out;
  for (std::size_t k = 0; k < clips.clips.size(); ++k) {
    const EvalClip& clip = clips.clips[k];
    DeterministicRng rng(derive_seed(spec.seed, k));
    for (const auto& a : clip.gt) {
      // Both draws happen for every action so settings do not shift streams.
      const bool dropped = rng.uniform() < spec.drop_prob;
      const double jitter = rng.normal() * spec.noise_std_s;
      if (dropped) continue;
      const double t = std::clamp(a.offset_s() + jitter, 0.0, window);
      out.push_back({clip.clip_id, a.label, t, 1.0});
    }
  }
  sort_predictions(out);
  return out;
}

std::vector<Prediction> prior_predictor(const ClassStats& train_stats,
                                        const EvalClipSet& clips,
                                        const BaselineSpec& spec) {
  spec.validate();
  const auto& counts = train_stats.train_counts();
  std::vector<int> classes(kNumClasses);
  std::iota(classes.begin(), classes.end(), 0);
  std::stable_sort(classes.begin(), classes.end(),
                   [&](int a, int b) { return counts[a] > counts[b]; });
  classes.resize(static_cast<std::size_t>(spec.prior_top_k));
  const double max_count = static_cast<double>(std::max<std::int64_t>(1, counts[classes[0]]));

  const double window = clips.anticipation_s;
  const int n = spec.prior_per_class;
  std::vector<Prediction> out;
  for (const auto& clip : clips.clips) {
    for (int c : classes) {
      const double conf = static_cast<double>(counts[c]) / max_count;
      for (int j = 0; j < n; ++j) {
        out.push_back({clip.clip_id, class_from_index(c), (j + 0.5) * window / n, conf});
      }
    }
  }
  sort_predictions(out);
  return out;
}

std::vector<Prediction> random_predictor(const EvalClipSet& clips,
                                         const BaselineSpec& spec) {
  spec.validate();
  const double window = clips.anticipation_s;
  std::vector<Prediction> out;
  for (std::size_t k = 0; k < clips.clips.size(); ++k) {
    DeterministicRng rng(derive_seed(spec.seed, k));
    for (int i = 0; i < spec.random_per_clip; ++i) {
      const auto c = static_cast<int>(rng.below(kNumClasses));
      const double t = rng.uniform() * window;
      const double conf = rng.uniform();
      out.push_back({clips.clips[k].clip_id, class_from_index(c), t, conf});
    }
  }
  sort_predictions(out);
  return out;
}

}  // namespace antbench
