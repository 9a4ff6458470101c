// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "antbench/losses.hpp"
#include "antbench/slot_output.hpp"

namespace antbench {

/// Component losses for one outputs+targets document (see
/// docs/file-formats.md, "loss-check input").
struct LossCheckResult {
  HeadVariant variant = HeadVariant::kQAct;
  LossParts parts;
  double anticipation = 0.0;
  double total = 0.0;
  Assignment assignment;
};

/// Builds the assignment from the document's gt (and outputs, for the
/// Hungarian heads), then evaluates every loss component.
LossCheckResult run_loss_check(const nlohmann::json& doc);
nlohmann::json to_json(const LossCheckResult& result);

/// {"clips": {"<clip_id>": [slot, ...], ...}} -> per-clip slot outputs.
std::map<std::string, std::vector<SlotOutput>> model_outputs_from_json(
    const nlohmann::json& doc);

}  // namespace antbench
