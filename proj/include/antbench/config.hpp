// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace antbench {

/// Benchmark and training hyper-parameters. Defaults reproduce the
/// reference setup: 5 s of context at 6.25 fps, 5 s anticipation, 8 queries.
struct BenchConfig {
  double context_s = 5.0;
  double anticipation_s = 5.0;
  double fps = 6.25;
  int dilation = 4;        // segmentation label radius, frames
  int queries = 8;
  int num_classes = 10;
  double eval_context_max_s = 30.0;

  double lambda_detection = 1.0;
  double lambda_class = 1.0;
  double lambda_time = 10.0;
  double lambda_segmentation = 1.0;

  /// Defaults for the given anticipation length; queries scale with it
  /// (8 at 5 s, 16 at 10 s).
  static BenchConfig for_anticipation(double anticipation_s);

  /// Frames covering [0, context_s): ceil(context_s * fps), 32 at defaults.
  int context_frames() const;
  std::int64_t context_ms() const;
  std::int64_t anticipation_ms() const;
  /// Training clip stride: one tenth of the context (90 % overlap).
  std::int64_t train_stride_ms() const;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

}  // namespace antbench
