// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <sstream>
#include <string>

#include "antbench/metrics.hpp"

namespace antbench {
namespace {

using nlohmann::json;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Mean AP of one class over the evaluated tolerances, if it has gt.
std::optional<double> class_average(const EvalReport& report, int c) {
  if (report.deltas.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& d : report.deltas) {
    if (!d.per_class[c].ap) return std::nullopt;
    sum += *d.per_class[c].ap;
  }
  return sum / static_cast<double>(report.deltas.size());
}

}  // namespace

json to_json(const EvalReport& report) {
  json deltas = json::array();
  for (const auto& d : report.deltas) {
    json classes = json::array();
    for (int c = 0; c < kNumClasses; ++c) {
      const ClassResult& cr = d.per_class[c];
      classes.push_back({{"label", std::string(class_name(class_from_index(c)))},
                         {"ap", cr.ap ? json(*cr.ap) : json(nullptr)},
                         {"tp", cr.tp},
                         {"fp", cr.fp},
                         {"gt", cr.gt}});
    }
    deltas.push_back({{"delta", format_delta(d.delta)},
                      {"map", d.map},
                      {"classes", std::move(classes)}});
  }
  return {{"num_clips", report.num_clips},
          {"num_predictions", report.num_predictions},
          {"deltas", std::move(deltas)},
          {"average", report.average}};
}

std::string report_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "delta,label,ap,tp,fp,gt\n";
  for (const auto& d : report.deltas) {
    const std::string delta = format_delta(d.delta);
    for (int c = 0; c < kNumClasses; ++c) {
      const ClassResult& cr = d.per_class[c];
      out << delta << ',' << class_name(class_from_index(c)) << ','
          << (cr.ap ? fixed(*cr.ap, 6) : "") << ',' << cr.tp << ',' << cr.fp
          << ',' << cr.gt << '\n';
    }
    out << delta << ",mAP," << fixed(d.map, 6) << ",,,\n";
  }
  out << "all,Average," << fixed(report.average, 6) << ",,,\n";
  return out.str();
}

std::string report_markdown(const EvalReport& report) {
  std::ostringstream out;
  out << "| Action |";
  for (std::size_t i = 0; i < report.deltas.size(); ++i) {
    const std::string d = format_delta(report.deltas[i].delta);
    const std::string shown = d == "inf" ? "∞" : d;
    out << ' ' << (i == 0 ? "δ=" + shown : shown) << " |";
  }
  out << " Avg. |\n|---|";
  for (std::size_t i = 0; i <= report.deltas.size(); ++i) out << "---:|";
  out << '\n';
  for (int c = 0; c < kNumClasses; ++c) {
    out << "| " << class_name(class_from_index(c)) << " |";
    for (const auto& d : report.deltas) {
      const auto& ap = d.per_class[c].ap;
      out << ' ' << (ap ? fixed(*ap * 100.0, 2) : "-") << " |";
    }
    const auto avg = class_average(report, c);
    out << ' ' << (avg ? fixed(*avg * 100.0, 2) : "-") << " |\n";
  }
  out << "| **mAP** |";
  for (const auto& d : report.deltas) out << ' ' << fixed(d.map * 100.0, 2) << " |";
  out << ' ' << fixed(report.average * 100.0, 2) << " |\n";
  return out.str();
}

}  // namespace antbench
