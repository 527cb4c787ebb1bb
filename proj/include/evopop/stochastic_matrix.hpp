// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace evopop {

/// Row-stochastic transition matrix with optional state labels.
/// Entry (i, j) is the one-step probability of moving from state i to j.
/// Immutable after construction.
class StochasticMatrix {
 public:
  static constexpr double kDefaultRowSumTol = 1e-12;

  /// `entries` is row-major, n*n values. Every entry must lie in [0,1] and
  /// every row must sum to 1, both within `row_sum_tol`; labels, when given,
  /// must have n entries. Violations throw std::invalid_argument.
  StochasticMatrix(std::size_t n, std::vector<double> entries,
                   std::vector<std::string> labels = {},
                   double row_sum_tol = kDefaultRowSumTol);

  static StochasticMatrix identity(std::size_t n);
  static StochasticMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                    std::vector<std::string> labels = {},
                                    double row_sum_tol = kDefaultRowSumTol);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * n_, n_};
  }
  std::span<const double> entries() const { return entries_; }

  /// Empty when states are unlabeled.
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::size_t n_;
  std::vector<double> entries_;
  std::vector<std::string> labels_;
};

/// Matrix product a*b; both row-stochastic, so the product is too.
/// Keeps a's labels. Parallelized over rows for large n.
StochasticMatrix multiply(const StochasticMatrix& a, const StochasticMatrix& b);

}  // namespace evopop
