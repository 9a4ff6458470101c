// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "antbench/config.hpp"
#include "antbench/slot_output.hpp"
#include "antbench/targets.hpp"
#include "antbench/windowing.hpp"

namespace antbench {

/// Probabilities are clamped to [eps, 1 - eps] before taking logs.
inline constexpr double kProbEpsilon = 1e-7;

/// Mean binary cross-entropy of actionness over all supervised slots
/// (paired slots are positives). Zero for heads without actionness.
double loss_detection(std::span<const SlotOutput> outputs,
                      const Assignment& assignment);

/// Weighted cross-entropy averaged over slots that carry a class target.
/// `weights` must match the head's class width (use with_extra_class_weight
/// to add the EoS / background entry). QBCE instead averages weighted
/// per-class binary cross-entropy over every (slot, class) pair.
double loss_class(std::span<const SlotOutput> outputs,
                  const Assignment& assignment,
                  std::span<const double> weights);

/// Mean squared error in log space over slots with a time target.
double loss_time(std::span<const SlotOutput> outputs,
                 const Assignment& assignment);

/// Weighted cross-entropy over frames; each row of `frame_probs` is a
/// (C + 1)-way distribution and `weights` has C + 1 entries.
double loss_segmentation(std::span<const std::vector<double>> frame_probs,
                         const SegGrid& grid,
                         std::span<const double> weights);

struct LossParts {
  double detection = 0.0;
  double classification = 0.0;
  double time = 0.0;
  double segmentation = 0.0;
};

/// Anticipation loss: lambda_D * L_D + lambda_C * L_C + lambda_T * L_T.
double anticipation_loss(const LossParts& parts, const BenchConfig& cfg);
/// Anticipation loss plus lambda_S * L_S.
double total_loss(const LossParts& parts, const BenchConfig& cfg);

/// Appends `extra` so the vector covers the EoS / background class.
std::vector<double> with_extra_class_weight(std::span<const double> weights,
                                            double extra = 1.0);

}  // namespace antbench
