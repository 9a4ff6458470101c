// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "antbench/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "antbench/error.hpp"

namespace antbench {
namespace {

using nlohmann::json;

constexpr std::string_view kPredictionsFormat = "antbench/predictions";

// Absorbs representation error when a distance sits exactly on delta / 2.
constexpr double kBoundarySlack = 1e-9;

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

// Order in which same-class predictions of one window claim ground truth.
bool claims_before(const ScoredTime& a, const ScoredTime& b) {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  return a.time_s < b.time_s;
}

}  // namespace

std::vector<double> parse_deltas(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view tok = trim(text.substr(pos, comma - pos));
    std::string lower(tok);
    for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower == "inf" || lower == "infinity" || lower == "∞") {
      out.push_back(kInfiniteDelta);
    } else {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() ||
          !std::isfinite(v) || v <= 0.0) {
        throw std::invalid_argument("bad tolerance \"" + std::string(tok) + "\"");
      }
      out.push_back(v);
    }
    pos = comma + 1;
  }
  return out;
}

std::string format_delta(double delta) {
  if (std::isinf(delta)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", delta);
  return buf;
}

DecodeResult decode_predictions(const std::string& clip_id,
                                std::span<const SlotOutput> outputs,
                                HeadVariant variant, const BenchConfig& cfg) {
  cfg.validate();
  if (cfg.num_classes > kNumClasses) {
    throw std::invalid_argument("decode_predictions: more classes than labels");
  }
  for (const auto& o : outputs) validate_slot_output(o, variant, cfg.num_classes);

  std::size_t kept = outputs.size();
  if (variant == HeadVariant::kQEOS) {
    for (std::size_t s = 0; s < outputs.size(); ++s) {
      const auto& p = outputs[s].class_probs;
      const auto argmax = std::max_element(p.begin(), p.end()) - p.begin();
      if (argmax == cfg.num_classes) {
        kept = s;  // EoS: this and every later query are discarded
        break;
      }
    }
  }

  const double window = cfg.anticipation_s;
  const double bin = window / cfg.queries;
  DecodeResult result;
  for (std::size_t s = 0; s < kept; ++s) {
    const SlotOutput& o = outputs[s];
    const DecodedTime t = decode_time(o.time_raw);
    if (t.clamped) ++result.clamped_times;
    const double time_s = variant == HeadVariant::kAnchors
                              ? (static_cast<double>(s) + t.normalized) * bin
                              : t.normalized * window;
    const double scale = has_actionness(variant) ? o.actionness : 1.0;
    for (int c = 0; c < cfg.num_classes; ++c) {
      result.predictions.push_back(
          {clip_id, class_from_index(c), std::min(time_s, window),
           std::clamp(scale * o.class_probs[c], 0.0, 1.0)});
    }
  }
  return result;
}

std::vector<bool> match_window(std::span<const ScoredTime> preds,
                               std::span<const double> gt_times,
                               double delta) {
  std::vector<std::size_t> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return claims_before(preds[a], preds[b]);
  });
  const double reach = delta / 2.0 + kBoundarySlack;
  std::vector<bool> matched(gt_times.size(), false);
  std::vector<bool> tp(preds.size(), false);
  for (const std::size_t i : order) {
    std::size_t best = gt_times.size();
    double best_dist = 0.0;
    for (std::size_t j = 0; j < gt_times.size(); ++j) {
      if (matched[j]) continue;
      const double d = std::abs(preds[i].time_s - gt_times[j]);
      if (d > reach) continue;
      if (best == gt_times.size() || d < best_dist) {
        best = j;
        best_dist = d;
      }
    }
    if (best < gt_times.size()) {
      matched[best] = true;
      tp[i] = true;
    }
  }
  return tp;
}

std::optional<double> average_precision(const std::vector<bool>& ranked_tp,
                                        std::int64_t total_gt) {
  if (total_gt <= 0) return std::nullopt;
  // Extended precision keeps results such as (1 + 2/3) / 2 on the double
  // nearest the exact fraction.
  const std::size_t n = ranked_tp.size();
  std::vector<long double> precision(n);
  std::int64_t tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (ranked_tp[i]) ++tp;
    precision[i] = static_cast<long double>(tp) / static_cast<long double>(i + 1);
  }
  // Precision envelope: best precision at this recall or beyond.
  for (std::size_t i = n; i-- > 1;) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  long double ap = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    if (ranked_tp[i]) ap += precision[i];
  }
  return std::min(1.0, static_cast<double>(ap / static_cast<long double>(total_gt)));
}

EvalReport evaluate(std::span<const Prediction> preds, const EvalClipSet& gt,
                    std::span<const double> deltas) {
  const double window = gt.anticipation_s;
  std::unordered_map<std::string_view, std::size_t> clip_index;
  for (std::size_t i = 0; i < gt.clips.size(); ++i) {
    clip_index.emplace(gt.clips[i].clip_id, i);
  }

  // groups[clip][class]: predictions sorted into claiming order.
  const std::size_t num_clips = gt.clips.size();
  std::vector<std::array<std::vector<ScoredTime>, kNumClasses>> groups(num_clips);
  for (std::size_t k = 0; k < preds.size(); ++k) {
    const Prediction& p = preds[k];
    const auto it = clip_index.find(p.clip_id);
    const std::string where = "prediction " + std::to_string(k);
    if (it == clip_index.end()) throw Error(where + ": unknown clip_id " + p.clip_id);
    if (!is_retained(p.label)) {
      throw Error(where + ": class " + std::string(class_name(p.label)) +
                  " is not evaluated");
    }
    if (!std::isfinite(p.confidence) || p.confidence < 0.0 || p.confidence > 1.0) {
      throw Error(where + ": confidence outside [0, 1]");
    }
    if (!std::isfinite(p.time_s) || p.time_s < 0.0 || p.time_s > window) {
      throw Error(where + ": time " + std::to_string(p.time_s) +
                  " s outside the anticipation window");
    }
    groups[it->second][class_index(p.label)].push_back({p.time_s, p.confidence});
  }
  for (auto& per_class : groups) {
    for (auto& g : per_class) std::sort(g.begin(), g.end(), claims_before);
  }

  std::vector<std::array<std::vector<double>, kNumClasses>> gt_times(num_clips);
  std::array<std::int64_t, kNumClasses> gt_count{};
  for (std::size_t i = 0; i < num_clips; ++i) {
    for (const auto& a : gt.clips[i].gt) {
      if (!is_retained(a.label)) continue;
      gt_times[i][class_index(a.label)].push_back(a.offset_s());
      ++gt_count[class_index(a.label)];
    }
  }

  // Cross-clip ties are broken by the canonical clip order, never by the
  // order of the clips file.
  std::vector<std::size_t> by_position(num_clips);
  std::iota(by_position.begin(), by_position.end(), 0);
  std::sort(by_position.begin(), by_position.end(), [&](std::size_t a, std::size_t b) {
    const EvalClip& x = gt.clips[a];
    const EvalClip& y = gt.clips[b];
    return std::tie(x.game_id, x.half, x.anticipation_start_ms, x.clip_id) <
           std::tie(y.game_id, y.half, y.anticipation_start_ms, y.clip_id);
  });
  std::vector<std::size_t> clip_rank(num_clips);
  for (std::size_t r = 0; r < num_clips; ++r) clip_rank[by_position[r]] = r;

  struct Ranked {
    double confidence;
    double time_s;
    std::size_t clip;  // canonical rank of the clip
    std::size_t rank;  // position in the window's claiming order
    bool tp;
  };

  EvalReport report;
  report.num_clips = num_clips;
  report.num_predictions = preds.size();
  for (const double delta : deltas) {
    if (!(delta > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    DeltaResult dr;
    dr.delta = delta;
    double ap_sum = 0.0;
    int ap_classes = 0;
    for (int c = 0; c < kNumClasses; ++c) {
      std::vector<Ranked> ranked;
      for (std::size_t i = 0; i < num_clips; ++i) {
        const auto& g = groups[i][c];
        if (g.empty()) continue;
        const auto flags = match_window(g, gt_times[i][c], delta);
        for (std::size_t r = 0; r < g.size(); ++r) {
          ranked.push_back({g[r].confidence, g[r].time_s, clip_rank[i], r, flags[r]});
        }
      }
      std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        if (a.confidence != b.confidence) return a.confidence > b.confidence;
        if (a.time_s != b.time_s) return a.time_s < b.time_s;
        if (a.clip != b.clip) return a.clip < b.clip;
        return a.rank < b.rank;
      });
      std::vector<bool> flags;
      flags.reserve(ranked.size());
      ClassResult& cr = dr.per_class[c];
      for (const auto& r : ranked) {
        flags.push_back(r.tp);
        (r.tp ? cr.tp : cr.fp) += 1;
      }
      cr.gt = gt_count[c];
      cr.ap = average_precision(flags, cr.gt);
      if (cr.ap) {
        ap_sum += *cr.ap;
        ++ap_classes;
      }
    }
    dr.map = ap_classes ? ap_sum / ap_classes : 0.0;
    report.deltas.push_back(dr);
  }
  double total = 0.0;
  for (const auto& d : report.deltas) total += d.map;
  report.average = report.deltas.empty()
                       ? 0.0
                       : total / static_cast<double>(report.deltas.size());
  return report;
}

void sort_predictions(std::vector<Prediction>& preds) {
  std::stable_sort(preds.begin(), preds.end(), [](const Prediction& a, const Prediction& b) {
    if (a.clip_id != b.clip_id) return a.clip_id < b.clip_id;
    if (a.label != b.label) return class_index(a.label) < class_index(b.label);
    if (a.time_s != b.time_s) return a.time_s < b.time_s;
    return a.confidence > b.confidence;
  });
}

json predictions_to_json(std::span<const Prediction> preds) {
  json arr = json::array();
  for (const auto& p : preds) {
    arr.push_back({{"clip_id", p.clip_id},
                   {"label", std::string(class_name(p.label))},
                   {"time_s", p.time_s},
                   {"confidence", p.confidence}});
  }
  return {{"format", kPredictionsFormat},
          {"version", 1},
          {"predictions", std::move(arr)}};
}

std::vector<Prediction> predictions_from_json(const json& doc) {
  const json* arr = nullptr;
  if (doc.is_array()) {
    arr = &doc;
  } else if (doc.is_object() && doc.contains("predictions")) {
    arr = &doc.at("predictions");
  }
  if (arr == nullptr || !arr->is_array()) {
    throw ParseError("predictions: expected a \"predictions\" array");
  }
  std::vector<Prediction> out;
  out.reserve(arr->size());
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const json& rec = (*arr)[i];
    const std::string where = "prediction " + std::to_string(i);
    try {
      Prediction p;
      p.clip_id = rec.at("clip_id").get<std::string>();
      const auto label = parse_class_label(rec.at("label").get<std::string>());
      if (!label) throw ParseError(where + ": unknown label");
      p.label = *label;
      p.time_s = rec.at("time_s").get<double>();
      p.confidence = rec.at("confidence").get<double>();
      out.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return out;
}

std::vector<Prediction> read_predictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open");
  try {
    return predictions_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace antbench
