// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#include "antbench/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace antbench {
namespace {

// Assignment of every row of an n x m matrix (n <= m) by shortest augmenting
// paths with row/column potentials. `a` is row-major; returns col_of_row.
std::vector<std::size_t> solve_rows(const std::vector<double>& a, std::size_t n,
                                    std::size_t m) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based arrays; index 0 is the virtual root of each augmenting tree.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> row_of_col(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of_col[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a[(i0 - 1) * m + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> col_of_row(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (row_of_col[j] != 0) col_of_row[row_of_col[j] - 1] = j - 1;
  }
  return col_of_row;
}

// Optimal cost restricted to the given rows and columns. A tall submatrix is
// solved transposed, so no padding entries are needed.
double optimal_cost(const CostMatrix& cost, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols) {
  if (rows.empty() || cols.empty()) return 0.0;
  const bool transpose = rows.size() > cols.size();
  const auto& short_side = transpose ? cols : rows;
  const auto& long_side = transpose ? rows : cols;
  const std::size_t n = short_side.size(), m = long_side.size();
  std::vector<double> a(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      a[i * m + j] = transpose ? cost(long_side[j], short_side[i])
                               : cost(short_side[i], long_side[j]);
    }
  }
  const auto match = solve_rows(a, n, m);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += transpose ? cost(long_side[match[i]], short_side[i])
                       : cost(short_side[i], long_side[match[i]]);
  }
  return total;
}

}  // namespace

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols,
                       std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("CostMatrix: data size does not match shape");
  }
}

Pairing hungarian(const CostMatrix& cost) {
  Pairing result;
  if (cost.empty()) return result;

  for (std::size_t r = 0; r < cost.rows(); ++r) {
    for (std::size_t c = 0; c < cost.cols(); ++c) {
      const double x = cost(r, c);
      if (!std::isfinite(x) || x < 0.0) {
        throw std::invalid_argument("hungarian: costs must be finite and >= 0");
      }
    }
  }

  std::vector<std::size_t> all_rows(cost.rows()), all_cols(cost.cols());
  for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = i;
  for (std::size_t j = 0; j < all_cols.size(); ++j) all_cols[j] = j;
  const double best = optimal_cost(cost, all_rows, all_cols);
  // Sums of the same entries in a different order may differ by rounding.
  // The slack is relative to the optimum, so scaling the matrix does not
  // change the pairing and large unused entries do not mask real gaps.
  const double tol = 4.0 * std::numeric_limits<double>::epsilon() * best *
                     static_cast<double>(std::max(cost.rows(), cost.cols()));
  const std::size_t target_pairs = std::min(cost.rows(), cost.cols());

  // Fix rows in order, each to the smallest column that still admits an
  // optimal completion. Pairing a row sorts before leaving it unpaired.
  std::vector<std::size_t> free_cols = all_cols;
  double spent = 0.0;
  for (std::size_t r = 0; r < cost.rows(); ++r) {
    std::vector<std::size_t> later_rows(all_rows.begin() + r + 1, all_rows.end());
    const std::size_t paired = result.pairs.size();
    const bool can_skip =
        paired + std::min(later_rows.size(), free_cols.size()) == target_pairs;

    std::size_t chosen = free_cols.size();
    std::size_t fallback = free_cols.size();
    double fallback_cost = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      std::vector<std::size_t> rest = free_cols;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      if (paired + 1 + std::min(later_rows.size(), rest.size()) != target_pairs) {
        continue;
      }
      const double candidate =
          spent + cost(r, free_cols[k]) + optimal_cost(cost, later_rows, rest);
      if (candidate <= best + tol) {
        chosen = k;
        break;
      }
      if (candidate < fallback_cost) {
        fallback_cost = candidate;
        fallback = k;
      }
    }
    if (chosen == free_cols.size() && !can_skip) chosen = fallback;
    if (chosen == free_cols.size()) continue;  // row stays unpaired

    const std::size_t c = free_cols[chosen];
    spent += cost(r, c);
    result.pairs.emplace_back(r, c);
    free_cols.erase(free_cols.begin() + static_cast<std::ptrdiff_t>(chosen));
  }
  result.cost = 0.0;
  for (const auto& [r, c] : result.pairs) result.cost += cost(r, c);
  return result;
}

}  // namespace antbench
