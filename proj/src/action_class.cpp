// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "antbench/action_class.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <utility>

namespace antbench {
namespace {

constexpr std::array<std::string_view, kNumRawClasses> kNames = {
    "Pass",  "Drive",    "High Pass", "Header",
    "Out",   "Throw-in", "Cross",     "Ball Player Block",
    "Shot",  "Successful Tackle", "Free Kick", "Goal",
};

// Upper-case, separators folded to single spaces.
std::string normalize(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char ch : s) {
    if (ch == '-' || ch == '_' || std::isspace(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  }
  return out;
}

}  // namespace

ActionClass class_from_index(int index) {
  if (index < 0 || index >= kNumRawClasses) {
    throw std::out_of_range("class index " + std::to_string(index));
  }
  return static_cast<ActionClass>(index);
}

std::string_view class_name(ActionClass c) { return kNames[class_index(c)]; }

std::optional<ActionClass> parse_class_label(std::string_view label) {
  static const std::array<std::pair<std::string_view, ActionClass>, 3> kAliases = {{
      {"PLAYER SUCCESSFUL TACKLE", ActionClass::kSuccessfulTackle},
      {"FK", ActionClass::kFreeKick},
      {"FREEKICK", ActionClass::kFreeKick},
  }};
  const std::string key = normalize(label);
  for (int i = 0; i < kNumRawClasses; ++i) {
    if (normalize(kNames[i]) == key) return static_cast<ActionClass>(i);
  }
  for (const auto& [alias, cls] : kAliases) {
    if (alias == key) return cls;
  }
  return std::nullopt;
}

bool class_name_less(ActionClass a, ActionClass b) {
  return class_name(a) < class_name(b);
}

}  // namespace antbench
