// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "antbench/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace antbench {
namespace {

// -log(p) with p floored at kProbEpsilon.
double neg_log(double p) { return -std::log(std::max(p, kProbEpsilon)); }

double bce(double p, int label) {
  return label ? neg_log(p) : neg_log(1.0 - p);
}

void check_shapes(std::span<const SlotOutput> outputs, const Assignment& a) {
  if (outputs.size() != a.slots.size()) {
    throw std::invalid_argument("losses: " + std::to_string(outputs.size()) +
                                " outputs for " + std::to_string(a.slots.size()) +
                                " slots");
  }
  for (const auto& o : outputs) validate_slot_output(o, a.variant, a.num_classes);
}

// Sums run in extended precision so that n equal terms average back to
// exactly that term.
double mean(long double sum, std::size_t n) {
  return n ? static_cast<double>(sum / static_cast<long double>(n)) : 0.0;
}

}  // namespace

double loss_detection(std::span<const SlotOutput> outputs,
                      const Assignment& assignment) {
  check_shapes(outputs, assignment);
  if (!has_actionness(assignment.variant)) return 0.0;
  long double sum = 0.0L;
  std::size_t n = 0;
  for (std::size_t s = 0; s < outputs.size(); ++s) {
    const SlotTarget& t = assignment.slots[s];
    if (!t.supervised) continue;
    sum += bce(outputs[s].actionness, t.actionness);
    ++n;
  }
  return mean(sum, n);
}

double loss_class(std::span<const SlotOutput> outputs,
                  const Assignment& assignment,
                  std::span<const double> weights) {
  check_shapes(outputs, assignment);
  const auto width =
      static_cast<std::size_t>(class_width(assignment.variant, assignment.num_classes));
  if (weights.size() != width) {
    throw std::invalid_argument("loss_class: expected " + std::to_string(width) +
                                " class weights, got " + std::to_string(weights.size()));
  }
  long double sum = 0.0L;
  std::size_t n = 0;
  if (assignment.variant == HeadVariant::kQBCE) {
    for (std::size_t s = 0; s < outputs.size(); ++s) {
      const SlotTarget& t = assignment.slots[s];
      if (!t.supervised) continue;
      for (std::size_t c = 0; c < width; ++c) {
        const int y = c < t.multi_hot.size() ? t.multi_hot[c] : 0;
        sum += weights[c] * bce(outputs[s].class_probs[c], y);
        ++n;
      }
    }
  } else {
    for (std::size_t s = 0; s < outputs.size(); ++s) {
      const SlotTarget& t = assignment.slots[s];
      if (!t.supervised || !t.class_target) continue;
      const auto c = static_cast<std::size_t>(*t.class_target);
      sum += weights[c] * neg_log(outputs[s].class_probs[c]);
      ++n;
    }
  }
  return mean(sum, n);
}

double loss_time(std::span<const SlotOutput> outputs,
                 const Assignment& assignment) {
  check_shapes(outputs, assignment);
  long double sum = 0.0L;
  std::size_t n = 0;
  for (std::size_t s = 0; s < outputs.size(); ++s) {
    const SlotTarget& t = assignment.slots[s];
    if (!t.supervised || !t.time_target) continue;
    const double diff = outputs[s].time_raw - encode_time(*t.time_target);
    sum += diff * diff;
    ++n;
  }
  return mean(sum, n);
}

double loss_segmentation(std::span<const std::vector<double>> frame_probs,
                         const SegGrid& grid,
                         std::span<const double> weights) {
  if (frame_probs.size() != grid.labels.size()) {
    throw std::invalid_argument("loss_segmentation: " +
                                std::to_string(frame_probs.size()) +
                                " frames of output for a grid of " +
                                std::to_string(grid.labels.size()));
  }
  long double sum = 0.0L;
  for (std::size_t f = 0; f < frame_probs.size(); ++f) {
    const auto& row = frame_probs[f];
    if (row.size() != weights.size()) {
      throw std::invalid_argument("loss_segmentation: frame " + std::to_string(f) +
                                  " width differs from the weight vector");
    }
    double total = 0.0;
    for (double p : row) {
      if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw std::invalid_argument("loss_segmentation: probability outside [0, 1]");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw std::invalid_argument("loss_segmentation: frame distribution does not sum to 1");
    }
    const int label = grid.labels[f];
    if (label < 0 || static_cast<std::size_t>(label) >= row.size()) {
      throw std::invalid_argument("loss_segmentation: label out of range");
    }
    sum += weights[label] * neg_log(row[label]);
  }
  return mean(sum, frame_probs.size());
}

double anticipation_loss(const LossParts& parts, const BenchConfig& cfg) {
  return cfg.lambda_detection * parts.detection +
         cfg.lambda_class * parts.classification + cfg.lambda_time * parts.time;
}

double total_loss(const LossParts& parts, const BenchConfig& cfg) {
  return anticipation_loss(parts, cfg) + cfg.lambda_segmentation * parts.segmentation;
}

std::vector<double> with_extra_class_weight(std::span<const double> weights,
                                            double extra) {
  std::vector<double> out(weights.begin(), weights.end());
  out.push_back(extra);
  return out;
}

}  // namespace antbench
