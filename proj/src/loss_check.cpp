// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "antbench/loss_check.hpp"

#include <algorithm>

#include "antbench/error.hpp"

namespace antbench {
namespace {

using nlohmann::json;

std::vector<TimedLabel> gt_from_json(const json& arr) {
  std::vector<TimedLabel> gt;
  for (const json& g : arr) {
    const auto label = parse_class_label(g.at("label").get<std::string>());
    if (!label || !is_retained(*label)) throw ParseError("loss-check: bad gt label");
    gt.push_back({*label, g.at("offset_ms").get<std::int64_t>()});
  }
  std::stable_sort(gt.begin(), gt.end(), [](const TimedLabel& a, const TimedLabel& b) {
    if (a.offset_ms != b.offset_ms) return a.offset_ms < b.offset_ms;
    return class_name_less(a.label, b.label);
  });
  return gt;
}

}  // namespace

LossCheckResult run_loss_check(const json& doc) {
  LossCheckResult r;
  try {
    const auto variant = parse_variant(doc.at("variant").get<std::string>());
    if (!variant) throw ParseError("loss-check: unknown variant");
    r.variant = *variant;

    std::vector<SlotOutput> outputs;
    for (const json& s : doc.at("outputs")) outputs.push_back(slot_output_from_json(s));

    BenchConfig cfg = BenchConfig::for_anticipation(doc.value("anticipation_s", 5.0));
    cfg.queries = static_cast<int>(outputs.size());
    if (const auto it = doc.find("lambdas"); it != doc.end()) {
      cfg.lambda_detection = it->value("detection", cfg.lambda_detection);
      cfg.lambda_class = it->value("class", cfg.lambda_class);
      cfg.lambda_time = it->value("time", cfg.lambda_time);
      cfg.lambda_segmentation = it->value("segmentation", cfg.lambda_segmentation);
    }

    const auto gt = gt_from_json(doc.at("gt"));
    r.assignment = assign_for_variant(r.variant, gt, outputs, cfg);

    const auto width = static_cast<std::size_t>(class_width(r.variant, cfg.num_classes));
    std::vector<double> weights(width, 1.0);
    if (const auto it = doc.find("class_weights"); it != doc.end()) {
      weights = it->get<std::vector<double>>();
      if (weights.size() + 1 == width) weights = with_extra_class_weight(weights);
    }

    r.parts.detection = loss_detection(outputs, r.assignment);
    r.parts.classification = loss_class(outputs, r.assignment, weights);
    r.parts.time = loss_time(outputs, r.assignment);

    if (const auto seg = doc.find("segmentation"); seg != doc.end()) {
      SegGrid grid;
      grid.labels = seg->at("labels").get<std::vector<int>>();
      const auto probs = seg->at("frame_probs").get<std::vector<std::vector<double>>>();
      std::vector<double> seg_weights(static_cast<std::size_t>(cfg.num_classes) + 1, 1.0);
      if (const auto w = seg->find("weights"); w != seg->end()) {
        seg_weights = w->get<std::vector<double>>();
      }
      r.parts.segmentation = loss_segmentation(probs, grid, seg_weights);
    }
    r.anticipation = anticipation_loss(r.parts, cfg);
    r.total = total_loss(r.parts, cfg);
  } catch (const json::exception& e) {
    throw ParseError(std::string("loss-check: ") + e.what());
  }
  return r;
}

json to_json(const LossCheckResult& r) {
  return {{"variant", std::string(variant_name(r.variant))},
          {"detection", r.parts.detection},
          {"class", r.parts.classification},
          {"time", r.parts.time},
          {"segmentation", r.parts.segmentation},
          {"anticipation", r.anticipation},
          {"total", r.total},
          {"assignment", to_json(r.assignment)}};
}

std::map<std::string, std::vector<SlotOutput>> model_outputs_from_json(const json& doc) {
  std::map<std::string, std::vector<SlotOutput>> out;
  try {
    for (const auto& [clip_id, slots] : doc.at("clips").items()) {
      auto& v = out[clip_id];
      for (const json& s : slots) v.push_back(slot_output_from_json(s));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("model outputs: ") + e.what());
  }
  return out;
}

}  // namespace antbench
