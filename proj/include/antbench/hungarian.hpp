// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace antbench {

/// Dense row-major matrix of finite, non-negative costs.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Pairing {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (row, col)
  double cost = 0.0;
};

/// Minimum-cost pairing of min(rows, cols) row/column pairs. Among optimal
/// pairings the lexicographically smallest list of (row, col) pairs is
/// returned. Pairs are sorted by row. Throws std::invalid_argument on
/// non-finite or negative entries.
Pairing hungarian(const CostMatrix& cost);

}  // namespace antbench
