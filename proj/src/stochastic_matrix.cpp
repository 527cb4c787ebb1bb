// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#include "evopop/stochastic_matrix.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace evopop {

StochasticMatrix::StochasticMatrix(std::size_t n, std::vector<double> entries,
                                   std::vector<std::string> labels,
                                   double row_sum_tol)
    : n_(n), entries_(std::move(entries)), labels_(std::move(labels)) {
  if (n_ == 0) {
    throw std::invalid_argument("StochasticMatrix: n must be > 0");
  }
  if (entries_.size() != n_ * n_) {
    throw std::invalid_argument("StochasticMatrix: expected " +
                                std::to_string(n_ * n_) + " entries, got " +
                                std::to_string(entries_.size()));
  }
  if (!labels_.empty() && labels_.size() != n_) {
    throw std::invalid_argument("StochasticMatrix: label count mismatch");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const double e = entries_[i * n_ + j];
      if (!std::isfinite(e) || e < -row_sum_tol || e > 1.0 + row_sum_tol) {
        throw std::invalid_argument("StochasticMatrix: entry (" +
                                    std::to_string(i) + "," +
                                    std::to_string(j) + ") outside [0,1]");
      }
      row_sum += e;
    }
    if (std::abs(row_sum - 1.0) > row_sum_tol) {
      throw std::invalid_argument("StochasticMatrix: row " + std::to_string(i) +
                                  " sums to " + std::to_string(row_sum) +
                                  ", not 1");
    }
  }
}

StochasticMatrix StochasticMatrix::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return StochasticMatrix(n, std::move(e));
}

StochasticMatrix StochasticMatrix::from_rows(
    const std::vector<std::vector<double>>& rows,
    std::vector<std::string> labels, double row_sum_tol) {
  const std::size_t n = rows.size();
  std::vector<double> e;
  e.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw std::invalid_argument("StochasticMatrix::from_rows: ragged rows");
    }
    e.insert(e.end(), row.begin(), row.end());
  }
  return StochasticMatrix(n, std::move(e), std::move(labels), row_sum_tol);
}

StochasticMatrix multiply(const StochasticMatrix& a, const StochasticMatrix& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("multiply: size mismatch");
  }
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  std::vector<double> out(a.size() * a.size(), 0.0);
  // i-k-j order keeps the inner loop contiguous. Each output row is owned by
  // one thread, so the result is identical with any thread count.
#pragma omp parallel for schedule(static) if (n >= 128)
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t k = 0; k < n; ++k) {
      const double aik = a(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
      if (aik == 0.0) continue;
      const double* brow = b.row(static_cast<std::size_t>(k)).data();
      double* orow = out.data() + i * n;
      for (std::int64_t j = 0; j < n; ++j) orow[j] += aik * brow[j];
    }
  }
  return StochasticMatrix(a.size(), std::move(out), a.labels(), 1e-10);
}

}  // namespace evopop
