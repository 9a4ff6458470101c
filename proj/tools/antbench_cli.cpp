// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: prepares evaluation clips and training targets
// from label files, runs the synthetic baselines and scores predictions.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "antbench/annotations.hpp"
#include "antbench/baselines.hpp"
#include "antbench/error.hpp"
#include "antbench/loss_check.hpp"
#include "antbench/metrics.hpp"
#include "antbench/synthetic.hpp"
#include "antbench/targets.hpp"
#include "antbench/windowing.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Expands directories into the Labels-ball.json files below them.
std::vector<fs::path> collect_label_files(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      for (const auto& e : fs::recursive_directory_iterator(p)) {
        if (e.is_regular_file() && e.path().filename() == "Labels-ball.json") {
          files.push_back(e.path());
        }
      }
    } else {
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<antbench::GameAnnotations> load_games(const std::vector<std::string>& inputs,
                                                  const std::string& split) {
  std::vector<antbench::GameAnnotations> games;
  std::optional<antbench::Split> wanted;
  if (split != "all") {
    wanted = antbench::parse_split(split);
    if (!wanted) throw std::invalid_argument("unknown split " + split);
  }
  for (const auto& f : collect_label_files(inputs)) {
    auto g = antbench::filter_classes(antbench::parse_annotations(f));
    if (!wanted || g.split == *wanted) games.push_back(std::move(g));
  }
  std::sort(games.begin(), games.end(),
            [](const auto& a, const auto& b) { return a.game_id < b.game_id; });
  return games;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw antbench::ParseError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw antbench::ParseError(path + ": " + e.what());
  }
}

void write_text(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

void write_json(const std::string& out, const json& doc) {
  write_text(out, doc.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Action anticipation benchmark toolkit"};
  app.require_subcommand(1);

  // prepare
  std::vector<std::string> prep_inputs;
  std::string prep_out, prep_split = "test";
  double prep_ta = 5.0, prep_ctx = 30.0;
  auto* prepare = app.add_subcommand("prepare", "Cut label files into evaluation clips");
  prepare->add_option("labels", prep_inputs, "Label files or directories")->required();
  prepare->add_option("--ta", prep_ta, "Anticipation window, seconds")->capture_default_str();
  prepare->add_option("--context-max", prep_ctx, "Longest context span, seconds")
      ->capture_default_str();
  prepare->add_option("--split", prep_split, "train|valid|test|challenge|all")
      ->capture_default_str();
  prepare->add_option("--out,-o", prep_out, "Output file (default stdout)");

  // stats
  std::vector<std::string> stats_inputs;
  std::string stats_out, stats_counts;
  auto* stats = app.add_subcommand("stats", "Class counts per split and class weights");
  auto* stats_labels = stats->add_option("labels", stats_inputs, "Label files or directories");
  stats->add_option("--counts", stats_counts, "Counts table instead of label files")
      ->excludes(stats_labels);
  stats->add_option("--out,-o", stats_out, "Output file (default stdout)");

  // targets
  std::vector<std::string> tgt_inputs;
  std::string tgt_variant = "q-act", tgt_outputs, tgt_out, tgt_split = "train";
  double tgt_tc = 5.0, tgt_ta = 5.0, tgt_fps = 6.25;
  int tgt_queries = 0;
  auto* targets = app.add_subcommand("targets", "Training clips with per-query targets");
  targets->add_option("labels", tgt_inputs, "Label files or directories")->required();
  targets->add_option("--variant", tgt_variant,
                      "q-act|q-eos|q-bckg|q-bce|q-hung-t|q-hung-a|anchors")
      ->capture_default_str();
  targets->add_option("--tc", tgt_tc, "Context window, seconds")->capture_default_str();
  targets->add_option("--ta", tgt_ta, "Anticipation window, seconds")->capture_default_str();
  targets->add_option("--fps", tgt_fps, "Frame rate")->capture_default_str();
  targets->add_option("--queries", tgt_queries, "Query slots (default 8 per 5 s)");
  targets->add_option("--outputs", tgt_outputs, "Model outputs (Hungarian heads)");
  targets->add_option("--split", tgt_split, "Split to use, or all")->capture_default_str();
  targets->add_option("--out,-o", tgt_out, "Output file (default stdout)");

  // loss-check
  std::string lc_in, lc_out;
  auto* loss_check = app.add_subcommand("loss-check", "Reference losses for one window");
  loss_check->add_option("input", lc_in, "Outputs + targets document")->required();
  loss_check->add_option("--out,-o", lc_out, "Output file (default stdout)");

  // decode
  std::string dec_in, dec_out, dec_variant = "q-act";
  double dec_ta = 5.0;
  int dec_queries = 0;
  auto* decode = app.add_subcommand("decode", "Turn model outputs into predictions");
  decode->add_option("outputs", dec_in, "Model outputs document")->required();
  decode->add_option("--variant", dec_variant, "Head variant")->capture_default_str();
  decode->add_option("--ta", dec_ta, "Anticipation window, seconds")->capture_default_str();
  decode->add_option("--queries", dec_queries, "Query slots (anchors bin width)");
  decode->add_option("--out,-o", dec_out, "Output file (default stdout)");

  // evaluate
  std::string ev_gt, ev_pred, ev_deltas = "1,2,3,4,5,inf", ev_format = "json", ev_out;
  auto* evaluate = app.add_subcommand("evaluate", "Score predictions with mAP@delta");
  evaluate->add_option("--gt", ev_gt, "Evaluation clips file")->required();
  evaluate->add_option("--pred", ev_pred, "Predictions file")->required();
  evaluate->add_option("--deltas", ev_deltas, "Tolerances in seconds")->capture_default_str();
  evaluate->add_option("--format", ev_format, "json|csv|md")
      ->check(CLI::IsMember({"json", "csv", "md"}))
      ->capture_default_str();
  evaluate->add_option("--out,-o", ev_out, "Output file (default stdout)");

  // baseline
  std::string bl_kind = "oracle", bl_clips, bl_out;
  std::vector<std::string> bl_train;
  antbench::BaselineSpec bl_spec;
  auto* baseline = app.add_subcommand("baseline", "Synthetic reference predictors");
  baseline->add_option("--kind", bl_kind, "oracle|prior|random")
      ->check(CLI::IsMember({"oracle", "prior", "random"}))
      ->capture_default_str();
  baseline->add_option("--clips", bl_clips, "Evaluation clips file")->required();
  baseline->add_option("--noise-std", bl_spec.noise_std_s, "Oracle time noise, seconds")
      ->capture_default_str();
  baseline->add_option("--drop-prob", bl_spec.drop_prob, "Oracle drop probability")
      ->capture_default_str();
  baseline->add_option("--seed", bl_spec.seed, "Random seed")->capture_default_str();
  baseline->add_option("--train", bl_train, "Training label files (prior)");
  baseline->add_option("--top-k", bl_spec.prior_top_k, "Prior: classes emitted")
      ->capture_default_str();
  baseline->add_option("--per-class", bl_spec.prior_per_class, "Prior: guesses per class")
      ->capture_default_str();
  baseline->add_option("--per-clip", bl_spec.random_per_clip, "Random: guesses per clip")
      ->capture_default_str();
  baseline->add_option("--out,-o", bl_out, "Output file (default stdout)");

  // synth
  std::string syn_dir, syn_split = "test", syn_prefix = "synthetic/game_";
  int syn_games = 3;
  std::uint64_t syn_seed = 1;
  double syn_half_s = 600.0;
  bool syn_excluded = false;
  auto* synth = app.add_subcommand("synth", "Write seeded synthetic label files");
  synth->add_option("--out-dir", syn_dir, "Destination directory")->required();
  synth->add_option("--games", syn_games, "Number of games")->capture_default_str();
  synth->add_option("--seed", syn_seed, "Base seed")->capture_default_str();
  synth->add_option("--split", syn_split, "Split tag")->capture_default_str();
  synth->add_option("--prefix", syn_prefix, "Game id prefix")->capture_default_str();
  synth->add_option("--half-duration", syn_half_s, "Half length, seconds")
      ->capture_default_str();
  synth->add_flag("--with-excluded", syn_excluded, "Include Free Kick / Goal labels");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*prepare) {
      antbench::BenchConfig cfg = antbench::BenchConfig::for_anticipation(prep_ta);
      cfg.eval_context_max_s = prep_ctx;
      const auto games = load_games(prep_inputs, prep_split);
      const auto set = antbench::make_eval_clip_set(games, cfg);
      const auto occ = antbench::window_occupancy(set.clips);
      std::cerr << games.size() << " games, " << set.clips.size() << " clips, "
                << "mean " << occ.mean_total << " / max " << occ.max_total
                << " actions per window\n";
      write_json(prep_out, antbench::to_json(set));
    } else if (*stats) {
      if (!stats_counts.empty()) {
        const auto counts = antbench::split_counts_from_json(read_json(stats_counts));
        write_json(stats_out, antbench::to_json(antbench::class_stats_from_counts(counts)));
      } else {
        if (stats_inputs.empty()) throw std::invalid_argument("stats needs label files or --counts");
        const auto games = load_games(stats_inputs, "all");
        write_json(stats_out, antbench::to_json(antbench::class_stats(games)));
      }
    } else if (*targets) {
      const auto variant = antbench::parse_variant(tgt_variant);
      if (!variant) throw std::invalid_argument("unknown variant " + tgt_variant);
      antbench::BenchConfig cfg = antbench::BenchConfig::for_anticipation(tgt_ta);
      cfg.context_s = tgt_tc;
      cfg.fps = tgt_fps;
      if (tgt_queries > 0) cfg.queries = tgt_queries;
      std::map<std::string, std::vector<antbench::SlotOutput>> outputs;
      if (!tgt_outputs.empty()) {
        outputs = antbench::model_outputs_from_json(read_json(tgt_outputs));
      }
      json records = json::array();
      for (const auto& game : load_games(tgt_inputs, tgt_split)) {
        for (const auto& clip : antbench::make_train_clips(game, cfg)) {
          const std::string id = clip.clip_id();
          std::span<const antbench::SlotOutput> slots;
          if (const auto it = outputs.find(id); it != outputs.end()) slots = it->second;
          const auto assignment =
              antbench::assign_for_variant(*variant, clip.future_actions, slots, cfg);
          records.push_back({{"clip_id", id},
                             {"context_start_ms", clip.context_start_ms},
                             {"context_end_ms", clip.context_end_ms},
                             {"segmentation", antbench::segmentation_targets(clip, cfg).labels},
                             {"targets", antbench::to_json(assignment)}});
        }
      }
      write_json(tgt_out, {{"format", "antbench/targets"},
                           {"variant", std::string(antbench::variant_name(*variant))},
                           {"context_s", cfg.context_s},
                           {"anticipation_s", cfg.anticipation_s},
                           {"fps", cfg.fps},
                           {"queries", cfg.queries},
                           {"clips", std::move(records)}});
    } else if (*loss_check) {
      write_json(lc_out, antbench::to_json(antbench::run_loss_check(read_json(lc_in))));
    } else if (*decode) {
      const auto variant = antbench::parse_variant(dec_variant);
      if (!variant) throw std::invalid_argument("unknown variant " + dec_variant);
      antbench::BenchConfig cfg = antbench::BenchConfig::for_anticipation(dec_ta);
      if (dec_queries > 0) cfg.queries = dec_queries;
      std::vector<antbench::Prediction> preds;
      std::size_t clamped = 0;
      for (const auto& [clip_id, slots] :
           antbench::model_outputs_from_json(read_json(dec_in))) {
        auto r = antbench::decode_predictions(clip_id, slots, *variant, cfg);
        clamped += r.clamped_times;
        std::move(r.predictions.begin(), r.predictions.end(), std::back_inserter(preds));
      }
      if (clamped > 0) std::cerr << clamped << " decoded times were clamped\n";
      antbench::sort_predictions(preds);
      write_json(dec_out, antbench::predictions_to_json(preds));
    } else if (*evaluate) {
      const auto deltas = antbench::parse_deltas(ev_deltas);
      const auto clips = antbench::read_eval_clips(ev_gt);
      const auto preds = antbench::read_predictions(ev_pred);
      const auto report = antbench::evaluate(preds, clips, deltas);
      if (ev_format == "json") {
        write_json(ev_out, antbench::to_json(report));
      } else if (ev_format == "csv") {
        write_text(ev_out, antbench::report_csv(report));
      } else {
        write_text(ev_out, antbench::report_markdown(report));
      }
    } else if (*baseline) {
      bl_spec.kind = *antbench::parse_baseline(bl_kind);
      const auto clips = antbench::read_eval_clips(bl_clips);
      std::vector<antbench::Prediction> preds;
      switch (bl_spec.kind) {
        case antbench::BaselineKind::kOracle:
          preds = antbench::oracle_predictor(clips, bl_spec);
          break;
        case antbench::BaselineKind::kRandom:
          preds = antbench::random_predictor(clips, bl_spec);
          break;
        case antbench::BaselineKind::kPrior: {
          if (bl_train.empty()) throw std::invalid_argument("prior needs --train label files");
          const auto games = load_games(bl_train, "all");
          preds = antbench::prior_predictor(antbench::class_stats(games), clips, bl_spec);
          break;
        }
      }
      write_json(bl_out, antbench::predictions_to_json(preds));
    } else if (*synth) {
      const auto split = antbench::parse_split(syn_split);
      if (!split) throw std::invalid_argument("unknown split " + syn_split);
      for (int i = 1; i <= syn_games; ++i) {
        antbench::SyntheticGameSpec spec;
        char num[16];
        std::snprintf(num, sizeof num, "%02d", i);
        spec.game_id = syn_prefix + num;
        spec.split = *split;
        spec.half_duration_ms = std::llround(syn_half_s * 1000.0);
        spec.include_excluded = syn_excluded;
        spec.seed = antbench::derive_seed(syn_seed, static_cast<std::uint64_t>(i));
        const auto game = antbench::make_synthetic_game(spec);
        const fs::path dir = fs::path(syn_dir) / fs::path(spec.game_id).filename();
        fs::create_directories(dir);
        write_json((dir / "Labels-ball.json").string(), antbench::to_json(game));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "antbench: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
