// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "antbench/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace antbench {

BenchConfig BenchConfig::for_anticipation(double anticipation_s) {
  BenchConfig cfg;
  cfg.anticipation_s = anticipation_s;
  cfg.queries = std::max(1, static_cast<int>(std::lround(anticipation_s / 5.0 * 8.0)));
  return cfg;
}

int BenchConfig::context_frames() const {
  // 5 s at 6.25 fps spans frame indices 0..31.
  return static_cast<int>(std::ceil(context_s * fps - 1e-9));
}

std::int64_t BenchConfig::context_ms() const {
  return std::llround(context_s * 1000.0);
}

std::int64_t BenchConfig::anticipation_ms() const {
  return std::llround(anticipation_s * 1000.0);
}

std::int64_t BenchConfig::train_stride_ms() const {
  return std::max<std::int64_t>(1, std::llround(context_s * 100.0));
}

void BenchConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("BenchConfig: ") + what);
  };
  require(std::isfinite(context_s) && context_s > 0, "context_s must be > 0");
  require(std::isfinite(anticipation_s) && anticipation_s > 0,
          "anticipation_s must be > 0");
  require(anticipation_ms() > 0, "anticipation_s below 1 ms");
  require(std::isfinite(fps) && fps > 0, "fps must be > 0");
  require(queries >= 1, "queries must be >= 1");
  require(dilation >= 0, "dilation must be >= 0");
  require(num_classes >= 1, "num_classes must be >= 1");
  require(eval_context_max_s >= 0, "eval_context_max_s must be >= 0");
  require(lambda_detection >= 0 && lambda_class >= 0 && lambda_time >= 0 &&
              lambda_segmentation >= 0,
          "loss weights must be >= 0");
}

}  // namespace antbench
