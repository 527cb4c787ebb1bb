// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#include "evopop/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace evopop {

Measure::Measure(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw std::invalid_argument("Measure: state space must be non-empty");
  }
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument(
          "Measure: weights must be non-negative and finite");
    }
  }
}

Measure Measure::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Measure::uniform: n must be > 0");
  return Measure(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Measure Measure::unit(std::size_t n, std::size_t state) {
  if (state >= n) throw std::invalid_argument("Measure::unit: state out of range");
  std::vector<double> w(n, 0.0);
  w[state] = 1.0;
  return Measure(std::move(w));
}

double Measure::total() const {
  double sum = 0.0;
  for (double w : weights_) sum += w;
  return sum;
}

bool Measure::is_distribution(double tol) const {
  return std::abs(total() - 1.0) <= tol;
}

double total_variation(const Measure& a, const Measure& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("total_variation: size mismatch");
  }
  double l1 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) l1 += std::abs(a[i] - b[i]);
  return 0.5 * l1;
}

}  // namespace evopop
