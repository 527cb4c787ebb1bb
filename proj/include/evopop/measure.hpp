// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace evopop {

/// Non-negative weights over states 0..n-1. A measure whose weights sum to 1
/// is a distribution; `is_distribution` checks that within a tolerance.
/// Immutable after construction.
class Measure {
 public:
  static constexpr double kDistributionTol = 1e-12;

  /// Throws std::invalid_argument on empty input or a negative/non-finite
  /// weight.
  explicit Measure(std::vector<double> weights);

  static Measure uniform(std::size_t n);
  /// Unit mass on `state`.
  static Measure unit(std::size_t n, std::size_t state);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  double total() const;
  bool is_distribution(double tol = kDistributionTol) const;

 private:
  std::vector<double> weights_;
};

/// Total-variation distance, (1/2) * L1. Sizes must match.
double total_variation(const Measure& a, const Measure& b);

}  // namespace evopop
