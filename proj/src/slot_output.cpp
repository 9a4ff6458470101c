// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "antbench/slot_output.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace antbench {
namespace {

constexpr std::array<std::string_view, 7> kVariantNames = {
    "q-act", "q-eos", "q-bckg", "q-bce", "q-hung-t", "q-hung-a", "anchors"};

std::string alnum_lower(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
  }
  return out;
}

}  // namespace

std::string_view variant_name(HeadVariant v) {
  return kVariantNames[static_cast<int>(v)];
}

std::optional<HeadVariant> parse_variant(std::string_view name) {
  const std::string key = alnum_lower(name);
  for (std::size_t i = 0; i < kVariantNames.size(); ++i) {
    if (alnum_lower(kVariantNames[i]) == key) return static_cast<HeadVariant>(i);
  }
  if (key == "qhungtime") return HeadVariant::kQHungTime;
  if (key == "qhungclass" || key == "qhungaction") return HeadVariant::kQHungClass;
  if (key == "anchor") return HeadVariant::kAnchors;
  return std::nullopt;
}

bool has_actionness(HeadVariant v) {
  switch (v) {
    case HeadVariant::kQAct:
    case HeadVariant::kQHungTime:
    case HeadVariant::kQHungClass:
    case HeadVariant::kAnchors:
      return true;
    case HeadVariant::kQEOS:
    case HeadVariant::kQBckg:
    case HeadVariant::kQBCE:
      return false;
  }
  return false;
}

int class_width(HeadVariant v, int num_classes) {
  return (v == HeadVariant::kQEOS || v == HeadVariant::kQBckg) ? num_classes + 1
                                                               : num_classes;
}

void validate_slot_output(const SlotOutput& out, HeadVariant v,
                          int num_classes) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("slot output (" + std::string(variant_name(v)) +
                                "): " + what);
  };
  const auto width = static_cast<std::size_t>(class_width(v, num_classes));
  if (out.class_probs.size() != width) {
    fail("expected " + std::to_string(width) + " class probabilities, got " +
         std::to_string(out.class_probs.size()));
  }
  double sum = 0.0;
  for (double p : out.class_probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) fail("probability outside [0, 1]");
    sum += p;
  }
  if (v != HeadVariant::kQBCE && std::abs(sum - 1.0) > 1e-9) {
    fail("class distribution sums to " + std::to_string(sum));
  }
  if (has_actionness(v) &&
      (!std::isfinite(out.actionness) || out.actionness < 0.0 ||
       out.actionness > 1.0)) {
    fail("actionness outside [0, 1]");
  }
  if (!std::isfinite(out.time_raw)) fail("time output is not finite");
}

double encode_time(double normalized) {
  if (!(normalized >= 0.0 && normalized < 1.0)) {
    throw std::invalid_argument("encode_time: normalized time " +
                                std::to_string(normalized) +
                                " outside [0, 1)");
  }
  return std::log(normalized + kTimeEpsilon);
}

DecodedTime decode_time(double raw) {
  if (std::isnan(raw)) throw std::invalid_argument("decode_time: NaN");
  const double x = std::exp(raw) - kTimeEpsilon;
  // Rounding in exp/log may land a hair outside the range for encode(0).
  constexpr double kSlack = 1e-12;
  if (x < 0.0) return {0.0, x < -kSlack};
  if (x > 1.0) return {1.0, x > 1.0 + kSlack};
  return {x, false};
}

SlotOutput slot_output_from_json(const nlohmann::json& j) {
  SlotOutput out;
  out.actionness = j.value("actionness", 0.0);
  out.class_probs = j.at("class_probs").get<std::vector<double>>();
  out.time_raw = j.value("time_raw", 0.0);
  return out;
}

nlohmann::json to_json(const SlotOutput& out) {
  return {{"actionness", out.actionness},
          {"class_probs", out.class_probs},
          {"time_raw", out.time_raw}};
}

}  // namespace antbench
