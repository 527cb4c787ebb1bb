// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace evopop {

/// A candidate solution: a non-empty, variable-length list of integer
/// attributes, each within the configured attribute range (default [1,100]).
struct Agent {
  std::vector<int> attributes;
};

/// The attribute values a user asks for; induces the selection pressure.
struct Request {
  std::vector<int> required;
};

bool valid_agent(const Agent& agent, int attr_lo = 1, int attr_hi = 100);
bool valid_request(const Request& request, int attr_lo = 1, int attr_hi = 100);

/// Total shortfall of `agent` against `request`: for each required value, the
/// distance to the agent's nearest attribute (attributes may serve several
/// requirements). Zero means an exact match for every requirement.
std::int64_t deviation(const Agent& agent, const Request& request);

/// 1 / (1 + deviation), in (0, 1]; exactly 1 iff the deviation is 0.
double fitness(const Agent& agent, const Request& request);

/// Fitness with bloat control: agents no longer than `mean_size` keep their
/// raw fitness, larger ones are scaled by (mean_size / size)^strength.
double parsimony_fitness(const Agent& agent, const Request& request,
                         double mean_size, double strength);

}  // namespace evopop
