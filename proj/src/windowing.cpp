// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "antbench/windowing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "antbench/error.hpp"

namespace antbench {
namespace {

using nlohmann::json;

constexpr std::string_view kEvalClipsFormat = "antbench/eval-clips";

bool timed_less(const TimedLabel& a, const TimedLabel& b) {
  if (a.offset_ms != b.offset_ms) return a.offset_ms < b.offset_ms;
  return class_name_less(a.label, b.label);
}

// Actions of one half, in stored order.
std::vector<const ActionInstance*> half_actions(const GameAnnotations& game,
                                                int half) {
  std::vector<const ActionInstance*> out;
  for (const auto& a : game.actions) {
    if (a.half == half) out.push_back(&a);
  }
  return out;
}

std::vector<TimedLabel> labels_in(std::span<const ActionInstance* const> actions,
                                  std::int64_t begin_ms, std::int64_t end_ms) {
  std::vector<TimedLabel> out;
  auto it = std::lower_bound(
      actions.begin(), actions.end(), begin_ms,
      [](const ActionInstance* a, std::int64_t t) { return a->time_ms < t; });
  for (; it != actions.end() && (*it)->time_ms < end_ms; ++it) {
    out.push_back({(*it)->label, (*it)->time_ms - begin_ms});
  }
  return out;
}

template <typename T>
T require_field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + ": bad \"" + key + "\"");
  }
}

}  // namespace

const EvalClip* EvalClipSet::find(std::string_view clip_id) const {
  for (const auto& c : clips) {
    if (c.clip_id == clip_id) return &c;
  }
  return nullptr;
}

std::string make_clip_id(std::string_view game_id, int half,
                         std::int64_t anticipation_start_ms) {
  return std::string(game_id) + "@" + std::to_string(half) + ":" +
         std::to_string(anticipation_start_ms);
}

std::int64_t effective_half_duration_ms(const GameAnnotations& game, int half,
                                        const BenchConfig& cfg) {
  if (const auto& d = game.half_duration_ms.at(half - 1)) return *d;
  std::int64_t last = -1;
  for (const auto& a : game.actions) {
    if (a.half == half) last = std::max(last, a.time_ms);
  }
  return last < 0 ? 0 : last + cfg.anticipation_ms();
}

std::vector<EvalClip> make_eval_clips(const GameAnnotations& game,
                                      const BenchConfig& cfg) {
  cfg.validate();
  const std::int64_t window = cfg.anticipation_ms();
  const std::int64_t context = std::llround(cfg.eval_context_max_s * 1000.0);
  std::vector<EvalClip> clips;
  for (int half = 1; half <= 2; ++half) {
    const auto actions = half_actions(game, half);
    const std::int64_t duration = effective_half_duration_ms(game, half, cfg);
    std::int64_t count = (duration + window - 1) / window;
    if (!actions.empty()) {
      // An action exactly at the half end still needs a window.
      count = std::max(count, actions.back()->time_ms / window + 1);
    }
    for (std::int64_t k = 0; k < count; ++k) {
      EvalClip clip;
      clip.game_id = game.game_id;
      clip.half = half;
      clip.anticipation_start_ms = k * window;
      clip.anticipation_end_ms = clip.anticipation_start_ms + window;
      clip.context_end_ms = clip.anticipation_start_ms;
      clip.context_start_ms =
          std::max<std::int64_t>(0, clip.context_end_ms - context);
      clip.partial = clip.anticipation_end_ms > duration;
      clip.clip_id = make_clip_id(game.game_id, half, clip.anticipation_start_ms);
      clip.gt = labels_in(actions, clip.anticipation_start_ms,
                          clip.anticipation_end_ms);
      clips.push_back(std::move(clip));
    }
  }
  return clips;
}

EvalClipSet make_eval_clip_set(std::span<const GameAnnotations> games,
                               const BenchConfig& cfg) {
  std::vector<const GameAnnotations*> order;
  for (const auto& g : games) order.push_back(&g);
  std::sort(order.begin(), order.end(),
            [](const auto* a, const auto* b) { return a->game_id < b->game_id; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i]->game_id == order[i - 1]->game_id) {
      throw Error("duplicate game id " + order[i]->game_id);
    }
  }
  EvalClipSet set;
  set.anticipation_s = cfg.anticipation_s;
  set.context_max_s = cfg.eval_context_max_s;
  for (const auto* g : order) {
    auto clips = make_eval_clips(*g, cfg);
    std::move(clips.begin(), clips.end(), std::back_inserter(set.clips));
  }
  return set;
}

json to_json(const EvalClipSet& set) {
  json clips = json::array();
  for (const auto& c : set.clips) {
    json gt = json::array();
    for (const auto& a : c.gt) {
      gt.push_back({{"label", std::string(class_name(a.label))},
                    {"offset_ms", a.offset_ms}});
    }
    clips.push_back({{"clip_id", c.clip_id},
                     {"game_id", c.game_id},
                     {"half", c.half},
                     {"context_start_ms", c.context_start_ms},
                     {"context_end_ms", c.context_end_ms},
                     {"anticipation_start_ms", c.anticipation_start_ms},
                     {"anticipation_end_ms", c.anticipation_end_ms},
                     {"partial", c.partial},
                     {"gt", std::move(gt)}});
  }
  return {{"format", kEvalClipsFormat},
          {"version", 1},
          {"anticipation_s", set.anticipation_s},
          {"context_max_s", set.context_max_s},
          {"clips", std::move(clips)}};
}

EvalClipSet eval_clips_from_json(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != kEvalClipsFormat) {
    throw ParseError("not an eval-clips document");
  }
  EvalClipSet set;
  set.anticipation_s = require_field<double>(doc, "anticipation_s", "eval-clips");
  set.context_max_s = require_field<double>(doc, "context_max_s", "eval-clips");
  if (!(set.anticipation_s > 0)) throw ParseError("anticipation_s must be > 0");
  const std::int64_t window = std::llround(set.anticipation_s * 1000.0);

  const auto clips = doc.find("clips");
  if (clips == doc.end() || !clips->is_array()) {
    throw ParseError("eval-clips: missing \"clips\" array");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < clips->size(); ++i) {
    const json& rec = (*clips)[i];
    const std::string where = "clip " + std::to_string(i);
    if (!rec.is_object()) throw ParseError(where + ": not an object");
    EvalClip c;
    c.clip_id = require_field<std::string>(rec, "clip_id", where);
    c.game_id = require_field<std::string>(rec, "game_id", where);
    c.half = require_field<int>(rec, "half", where);
    c.context_start_ms = require_field<std::int64_t>(rec, "context_start_ms", where);
    c.context_end_ms = require_field<std::int64_t>(rec, "context_end_ms", where);
    c.anticipation_start_ms =
        require_field<std::int64_t>(rec, "anticipation_start_ms", where);
    c.anticipation_end_ms =
        require_field<std::int64_t>(rec, "anticipation_end_ms", where);
    c.partial = rec.value("partial", false);
    if (!seen.insert(c.clip_id).second) {
      throw ParseError(where + ": duplicate clip_id " + c.clip_id);
    }
    if (c.anticipation_end_ms - c.anticipation_start_ms != window) {
      throw ParseError(where + ": window length differs from anticipation_s");
    }
    const auto gt = rec.find("gt");
    if (gt == rec.end() || !gt->is_array()) {
      throw ParseError(where + ": missing \"gt\" array");
    }
    for (const json& g : *gt) {
      const auto label = parse_class_label(require_field<std::string>(g, "label", where));
      if (!label || !is_retained(*label)) {
        throw ParseError(where + ": unknown or excluded gt label");
      }
      const auto offset = require_field<std::int64_t>(g, "offset_ms", where);
      if (offset < 0 || offset >= window) {
        throw ParseError(where + ": gt offset outside the window");
      }
      c.gt.push_back({*label, offset});
    }
    std::sort(c.gt.begin(), c.gt.end(), timed_less);
    set.clips.push_back(std::move(c));
  }
  return set;
}

EvalClipSet read_eval_clips(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open");
  try {
    return eval_clips_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

WindowOccupancy window_occupancy(std::span<const EvalClip> clips) {
  WindowOccupancy occ;
  occ.windows = clips.size();
  std::array<std::size_t, kNumClasses> sums{};
  std::size_t total = 0;
  for (const auto& clip : clips) {
    std::array<std::size_t, kNumClasses> here{};
    for (const auto& a : clip.gt) {
      if (is_retained(a.label)) ++here[class_index(a.label)];
    }
    for (int c = 0; c < kNumClasses; ++c) {
      sums[c] += here[c];
      occ.max_per_class[c] = std::max(occ.max_per_class[c], here[c]);
    }
    total += clip.gt.size();
    occ.max_total = std::max(occ.max_total, clip.gt.size());
  }
  if (occ.windows > 0) {
    const auto n = static_cast<double>(occ.windows);
    for (int c = 0; c < kNumClasses; ++c) {
      occ.mean_per_class[c] = static_cast<double>(sums[c]) / n;
    }
    occ.mean_total = static_cast<double>(total) / n;
  }
  return occ;
}

std::string TrainClip::clip_id() const {
  return make_clip_id(game_id, half, context_start_ms);
}

std::vector<TrainClip> make_train_clips(const GameAnnotations& game,
                                        const BenchConfig& cfg) {
  cfg.validate();
  const std::int64_t context = cfg.context_ms();
  const std::int64_t window = cfg.anticipation_ms();
  const std::int64_t stride = cfg.train_stride_ms();
  std::vector<TrainClip> clips;
  for (int half = 1; half <= 2; ++half) {
    const auto actions = half_actions(game, half);
    const std::int64_t duration = effective_half_duration_ms(game, half, cfg);
    for (std::int64_t start = 0; start + context <= duration; start += stride) {
      TrainClip clip;
      clip.game_id = game.game_id;
      clip.half = half;
      clip.context_start_ms = start;
      clip.context_end_ms = start + context;
      clip.context_actions = labels_in(actions, start, clip.context_end_ms);
      clip.future_actions =
          labels_in(actions, clip.context_end_ms, clip.context_end_ms + window);
      clips.push_back(std::move(clip));
    }
  }
  return clips;
}

int frame_index(std::int64_t offset_ms, const BenchConfig& cfg) {
  const double exact = static_cast<double>(offset_ms) * cfg.fps / 1000.0;
  const auto idx = static_cast<int>(std::floor(exact + 0.5));
  return std::clamp(idx, 0, cfg.context_frames() - 1);
}

SegGrid segmentation_targets(const TrainClip& clip, const BenchConfig& cfg) {
  const int frames = cfg.context_frames();
  SegGrid grid;
  grid.labels.assign(frames, 0);
  std::vector<int> centres;
  centres.reserve(clip.context_actions.size());
  for (const auto& a : clip.context_actions) {
    if (class_index(a.label) >= cfg.num_classes) {
      throw std::invalid_argument("segmentation_targets: label " +
                                  std::string(class_name(a.label)) +
                                  " is not an evaluated class");
    }
    centres.push_back(frame_index(a.offset_ms, cfg));
  }
  for (int f = 0; f < frames; ++f) {
    int best = -1;
    int best_dist = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < centres.size(); ++i) {
      const int d = std::abs(f - centres[i]);
      if (d <= cfg.dilation && d < best_dist) {
        best = static_cast<int>(i);
        best_dist = d;
      }
    }
    if (best >= 0) {
      grid.labels[f] = class_index(clip.context_actions[best].label) + 1;
    }
  }
  return grid;
}

}  // namespace antbench
