// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exhaustive assignment enumeration, test oracle for the Hungarian solver.

#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "antbench/hungarian.hpp"

namespace antbench::testing {

struct BruteForceResult {
  double cost = std::numeric_limits<double>::infinity();
  // Lexicographically smallest optimal (row, col) list.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// Enumerates every injective map from the smaller side into the larger one.
inline BruteForceResult brute_force_assignment(const CostMatrix& m) {
  BruteForceResult best;
  if (m.empty()) {
    best.cost = 0.0;
    return best;
  }
  const bool transpose = m.rows() > m.cols();
  const std::size_t small = transpose ? m.cols() : m.rows();
  const std::size_t large = transpose ? m.rows() : m.cols();
  std::vector<std::size_t> perm(large);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    // Only the first `small` entries matter; skip duplicate prefixes by
    // requiring the tail to be sorted.
    if (!std::is_sorted(perm.begin() + small, perm.end())) continue;
    double cost = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < small; ++i) {
      const std::size_t r = transpose ? perm[i] : i;
      const std::size_t c = transpose ? i : perm[i];
      pairs.emplace_back(r, c);
    }
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [r, c] : pairs) cost += m(r, c);
    if (cost < best.cost || (cost == best.cost && pairs < best.pairs)) {
      best.cost = cost;
      best.pairs = std::move(pairs);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace antbench::testing
