// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#include "evopop/agent.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace evopop {

bool valid_agent(const Agent& agent, int attr_lo, int attr_hi) {
  if (agent.attributes.empty()) return false;
  for (int a : agent.attributes) {
    if (a < attr_lo || a > attr_hi) return false;
  }
  return true;
}

bool valid_request(const Request& request, int attr_lo, int attr_hi) {
  if (request.required.empty()) return false;
  for (int r : request.required) {
    if (r < attr_lo || r > attr_hi) return false;
  }
  return true;
}

std::int64_t deviation(const Agent& agent, const Request& request) {
  if (agent.attributes.empty()) {
    throw std::invalid_argument("deviation: agent has no attributes");
  }
  if (request.required.empty()) {
    throw std::invalid_argument("deviation: request has no requirements");
  }
  std::int64_t total = 0;
  for (int r : request.required) {
    int best = std::numeric_limits<int>::max();
    for (int a : agent.attributes) {
      const int d = std::abs(r - a);
      if (d < best) best = d;
      if (best == 0) break;
    }
    total += best;
  }
  return total;
}

double fitness(const Agent& agent, const Request& request) {
  return 1.0 / (1.0 + static_cast<double>(deviation(agent, request)));
}

double parsimony_fitness(const Agent& agent, const Request& request,
                         double mean_size, double strength) {
  if (mean_size <= 0.0) {
    throw std::invalid_argument("parsimony_fitness: mean_size must be > 0");
  }
  if (strength < 0.0) {
    throw std::invalid_argument("parsimony_fitness: strength must be >= 0");
  }
  const double raw = fitness(agent, request);
  const double size = static_cast<double>(agent.attributes.size());
  if (size <= mean_size || strength == 0.0) return raw;
  return raw * std::pow(mean_size / size, strength);
}

}  // namespace evopop
