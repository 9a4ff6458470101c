// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "antbench/targets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "antbench/hungarian.hpp"

namespace antbench {
namespace {

void check_gt(std::span<const TimedLabel> gt, std::int64_t window_ms,
              int num_classes) {
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (gt[i].offset_ms < 0 || gt[i].offset_ms >= window_ms) {
      throw std::invalid_argument("gt offset " + std::to_string(gt[i].offset_ms) +
                                  " ms outside the anticipation window");
    }
    if (class_index(gt[i].label) >= num_classes) {
      throw std::invalid_argument("gt label " + std::string(class_name(gt[i].label)) +
                                  " is not an evaluated class");
    }
    if (i > 0 && gt[i].offset_ms < gt[i - 1].offset_ms) {
      throw std::invalid_argument("gt must be sorted by time");
    }
  }
}

double normalized(const TimedLabel& a, std::int64_t window_ms) {
  return static_cast<double>(a.offset_ms) / static_cast<double>(window_ms);
}

// Q-Act style targets for an arbitrary slot -> gt pairing.
Assignment targets_from_pairing(HeadVariant variant,
                                std::span<const TimedLabel> gt,
                                const std::vector<std::optional<std::size_t>>& slot_gt,
                                std::int64_t window_ms, int num_classes) {
  Assignment a;
  a.variant = variant;
  a.num_classes = num_classes;
  a.slots.resize(slot_gt.size());
  std::size_t paired = 0;
  for (std::size_t s = 0; s < slot_gt.size(); ++s) {
    if (!slot_gt[s]) continue;
    const TimedLabel& g = gt[*slot_gt[s]];
    SlotTarget& t = a.slots[s];
    t.gt_index = slot_gt[s];
    t.actionness = 1;
    t.class_target = class_index(g.label);
    t.time_target = normalized(g, window_ms);
    ++paired;
  }
  a.truncated = paired < gt.size();
  return a;
}

std::vector<std::optional<std::size_t>> sequential_pairing(std::size_t num_gt,
                                                           int queries) {
  std::vector<std::optional<std::size_t>> slot_gt(static_cast<std::size_t>(queries));
  for (std::size_t s = 0; s < slot_gt.size() && s < num_gt; ++s) slot_gt[s] = s;
  return slot_gt;
}

std::vector<std::optional<std::size_t>> hungarian_pairing(
    HeadVariant variant, std::span<const TimedLabel> gt,
    std::span<const SlotOutput> outputs, const BenchConfig& cfg) {
  const auto q = static_cast<std::size_t>(cfg.queries);
  if (outputs.size() != q) {
    throw std::invalid_argument(std::string(variant_name(variant)) +
                                " requires model outputs for all " +
                                std::to_string(q) + " queries, got " +
                                std::to_string(outputs.size()));
  }
  for (const auto& o : outputs) validate_slot_output(o, variant, cfg.num_classes);

  const std::int64_t window = cfg.anticipation_ms();
  CostMatrix cost(q, gt.size());
  for (std::size_t s = 0; s < q; ++s) {
    for (std::size_t j = 0; j < gt.size(); ++j) {
      if (variant == HeadVariant::kQHungTime) {
        // |t_slot - t_gt| / T_a in normalized units.
        cost(s, j) = std::abs(decode_time(outputs[s].time_raw).normalized -
                              normalized(gt[j], window));
      } else {
        cost(s, j) = 1.0 - outputs[s].class_probs[class_index(gt[j].label)];
      }
    }
  }
  std::vector<std::optional<std::size_t>> slot_gt(q);
  for (const auto& [s, j] : hungarian(cost).pairs) slot_gt[s] = j;
  return slot_gt;
}

}  // namespace

std::size_t Assignment::num_paired() const {
  return static_cast<std::size_t>(std::count_if(
      slots.begin(), slots.end(), [](const SlotTarget& t) { return t.gt_index.has_value(); }));
}

int anchor_bin(std::int64_t offset_ms, int queries,
               std::int64_t anticipation_ms) {
  return static_cast<int>(offset_ms * queries / anticipation_ms);
}

Assignment sequential_assign(std::span<const TimedLabel> gt, int queries,
                             double anticipation_s) {
  BenchConfig cfg;
  cfg.anticipation_s = anticipation_s;
  cfg.queries = queries;
  cfg.num_classes = kNumRawClasses;  // label range is checked by callers
  cfg.validate();
  check_gt(gt, cfg.anticipation_ms(), cfg.num_classes);
  Assignment a = targets_from_pairing(HeadVariant::kQAct, gt,
                                      sequential_pairing(gt.size(), queries),
                                      cfg.anticipation_ms(), kNumClasses);
  return a;
}

Assignment assign_for_variant(HeadVariant variant,
                              std::span<const TimedLabel> gt,
                              std::span<const SlotOutput> outputs,
                              const BenchConfig& cfg) {
  cfg.validate();
  const std::int64_t window = cfg.anticipation_ms();
  const int num_classes = cfg.num_classes;
  check_gt(gt, window, num_classes);
  const auto pairing = [&] {
    return sequential_pairing(gt.size(), cfg.queries);
  };

  switch (variant) {
    case HeadVariant::kQAct:
      return targets_from_pairing(variant, gt, pairing(), window, num_classes);

    case HeadVariant::kQHungTime:
    case HeadVariant::kQHungClass:
      return targets_from_pairing(variant, gt,
                                  hungarian_pairing(variant, gt, outputs, cfg),
                                  window, num_classes);

    case HeadVariant::kQEOS:
    case HeadVariant::kQBckg: {
      Assignment a = targets_from_pairing(variant, gt, pairing(), window, num_classes);
      bool seen_unpaired = false;
      for (auto& t : a.slots) {
        if (t.gt_index) continue;
        if (variant == HeadVariant::kQEOS && seen_unpaired) {
          t.supervised = false;  // beyond EoS: discarded at inference
          continue;
        }
        t.class_target = num_classes;
        seen_unpaired = true;
      }
      return a;
    }

    case HeadVariant::kQBCE: {
      Assignment a = targets_from_pairing(variant, gt, pairing(), window, num_classes);
      for (auto& t : a.slots) {
        t.multi_hot.assign(static_cast<std::size_t>(num_classes), 0);
        if (t.class_target) t.multi_hot[*t.class_target] = 1;
        t.class_target.reset();
      }
      return a;
    }

    case HeadVariant::kAnchors: {
      Assignment a;
      a.variant = variant;
      a.num_classes = num_classes;
      a.slots.resize(static_cast<std::size_t>(cfg.queries));
      std::size_t paired = 0;
      for (std::size_t j = 0; j < gt.size(); ++j) {
        const int bin = anchor_bin(gt[j].offset_ms, cfg.queries, window);
        SlotTarget& t = a.slots[bin];
        if (t.gt_index) continue;  // only the first action of a bin counts
        t.gt_index = j;
        t.actionness = 1;
        t.class_target = class_index(gt[j].label);
        // Position inside the bin, normalized by the bin length T_a / q.
        t.time_target =
            static_cast<double>(gt[j].offset_ms * cfg.queries - bin * window) /
            static_cast<double>(window);
        ++paired;
      }
      a.truncated = paired < gt.size();
      return a;
    }
  }
  throw std::invalid_argument("unknown head variant");
}

nlohmann::json to_json(const Assignment& a) {
  using nlohmann::json;
  json slots = json::array();
  for (const auto& t : a.slots) {
    json s;
    s["gt_index"] = t.gt_index ? json(*t.gt_index) : json(nullptr);
    s["actionness"] = t.actionness;
    s["class_target"] = t.class_target ? json(*t.class_target) : json(nullptr);
    if (a.variant == HeadVariant::kQBCE) s["multi_hot"] = t.multi_hot;
    s["time_target"] = t.time_target ? json(*t.time_target) : json(nullptr);
    s["supervised"] = t.supervised;
    slots.push_back(std::move(s));
  }
  return {{"variant", std::string(variant_name(a.variant))},
          {"truncated", a.truncated},
          {"slots", std::move(slots)}};
}

}  // namespace antbench
