// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#include "evopop/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace evopop {
namespace {

// First k entries of a uniformly shuffled index array (partial Fisher-Yates).
std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t k, Rng& rng) {
  std::vector<std::size_t> indices(n);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform_index(n - i);
    std::swap(indices[i], indices[j]);
  }
  indices.resize(k);
  return indices;
}

std::size_t quota(double rate, std::size_t n) {
  return static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));
}

}  // namespace

void EvolutionParams::validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("EvolutionParams: " + what);
  };
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    fail("mutation_rate must be in [0,1]");
  }
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    fail("crossover_rate must be in [0,1]");
  }
  if (init_attr_min < 1 || init_attr_min > init_attr_max) {
    fail("init_attr_min must satisfy 1 <= init_attr_min <= init_attr_max");
  }
  if (attr_lo < 1 || attr_lo > attr_hi || attr_hi > 100) {
    fail("attribute range must satisfy 1 <= attr_lo <= attr_hi <= 100");
  }
  if (!(parsimony_strength >= 0.0)) fail("parsimony_strength must be >= 0");
  if (size_min < 1) fail("size_min must be >= 1");
  if (base_population < size_min || base_population > size_max) {
    fail("base_population must lie within [size_min, size_max]");
  }
}

double mean_agent_size(const Population& population) {
  if (population.agents.empty()) {
    throw std::invalid_argument("mean_agent_size: empty population");
  }
  std::size_t total = 0;
  for (const Agent& a : population.agents) total += a.attributes.size();
  return static_cast<double>(total) /
         static_cast<double>(population.agents.size());
}

Population init_population(const EvolutionParams& params, Rng& rng) {
  params.validate();
  Population population;
  population.generation = 0;
  population.agents.resize(static_cast<std::size_t>(params.base_population));
  for (Agent& agent : population.agents) {
    const auto len = static_cast<std::size_t>(
        rng.uniform_int(params.init_attr_min, params.init_attr_max));
    agent.attributes.resize(len);
    for (int& attr : agent.attributes) {
      attr = static_cast<int>(rng.uniform_int(params.attr_lo, params.attr_hi));
    }
  }
  return population;
}

std::vector<double> selection_weights(const Population& population,
                                      const Request& request,
                                      const EvolutionParams& params) {
  const double mean_size = mean_agent_size(population);
  std::vector<double> weights(population.agents.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] = parsimony_fitness(population.agents[i], request, mean_size,
                                   params.parsimony_strength);
  }
  return weights;
}

Population select(const Population& population, const Request& request,
                  std::int64_t target_size, const EvolutionParams& params,
                  Rng& rng) {
  if (population.agents.empty()) {
    throw std::invalid_argument("select: empty population");
  }
  if (target_size < 1) {
    throw std::invalid_argument("select: target_size must be >= 1");
  }
  const std::vector<double> weights = selection_weights(population, request, params);
  std::vector<double> cumulative(weights.size());
  std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
  const double total = cumulative.back();  // > 0, fitness is never 0

  Population next;
  next.generation = population.generation;
  next.agents.reserve(static_cast<std::size_t>(target_size));
  for (std::int64_t k = 0; k < target_size; ++k) {
    const double u = rng.uniform01() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;  // guard the u == total rounding edge
    next.agents.push_back(
        population.agents[static_cast<std::size_t>(it - cumulative.begin())]);
  }
  return next;
}

std::pair<Agent, Agent> crossover_pair(const Agent& a, const Agent& b,
                                       std::size_t cut_a, std::size_t cut_b) {
  if (cut_a > a.attributes.size() || cut_b > b.attributes.size()) {
    throw std::invalid_argument("crossover_pair: cut past end of parent");
  }
  const Agent& longer =
      a.attributes.size() >= b.attributes.size() ? a : b;
  auto make_child = [&](const Agent& head, std::size_t cut_head,
                        const Agent& tail, std::size_t cut_tail) {
    Agent child;
    child.attributes.assign(head.attributes.begin(),
                            head.attributes.begin() +
                                static_cast<std::ptrdiff_t>(cut_head));
    child.attributes.insert(child.attributes.end(),
                            tail.attributes.begin() +
                                static_cast<std::ptrdiff_t>(cut_tail),
                            tail.attributes.end());
    if (child.attributes.empty()) {
      child.attributes.push_back(longer.attributes.front());
    }
    return child;
  };
  return {make_child(a, cut_a, b, cut_b), make_child(b, cut_b, a, cut_a)};
}

Population crossover_step(Population population, double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("crossover_step: rate must be in [0,1]");
  }
  const std::size_t n = population.agents.size();
  const std::size_t k = quota(rate, n);
  if (k < 2) return population;
  const std::vector<std::size_t> chosen = sample_without_replacement(n, k, rng);
  // Selection order is already uniform, so consecutive entries form random
  // pairs; an odd leftover stays as it is.
  for (std::size_t pair = 0; pair + 1 < k; pair += 2) {
    Agent& first = population.agents[chosen[pair]];
    Agent& second = population.agents[chosen[pair + 1]];
    const auto cut_first =
        static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(
                                                        first.attributes.size())));
    const auto cut_second = static_cast<std::size_t>(rng.uniform_int(
        0, static_cast<std::int64_t>(second.attributes.size())));
    auto children = crossover_pair(first, second, cut_first, cut_second);
    first = std::move(children.first);
    second = std::move(children.second);
  }
  return population;
}

void apply_point_mutation(Agent& agent, MutationKind kind,
                          const EvolutionParams& params, Rng& rng) {
  if (agent.attributes.empty()) {
    throw std::invalid_argument("apply_point_mutation: empty agent");
  }
  const std::size_t len = agent.attributes.size();
  if (kind == MutationKind::kDelete && len == 1) {
    kind = MutationKind::kReplace;  // deletion never empties an agent
  }
  switch (kind) {
    case MutationKind::kInsert: {
      const std::size_t pos = rng.uniform_index(len + 1);
      const int value =
          static_cast<int>(rng.uniform_int(params.attr_lo, params.attr_hi));
      agent.attributes.insert(
          agent.attributes.begin() + static_cast<std::ptrdiff_t>(pos), value);
      break;
    }
    case MutationKind::kReplace: {
      const std::size_t pos = rng.uniform_index(len);
      agent.attributes[pos] =
          static_cast<int>(rng.uniform_int(params.attr_lo, params.attr_hi));
      break;
    }
    case MutationKind::kDelete: {
      const std::size_t pos = rng.uniform_index(len);
      agent.attributes.erase(agent.attributes.begin() +
                             static_cast<std::ptrdiff_t>(pos));
      break;
    }
  }
}

Population mutate_step(Population population, double rate,
                       const EvolutionParams& params, Rng& rng) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("mutate_step: rate must be in [0,1]");
  }
  const std::size_t n = population.agents.size();
  const std::size_t k = quota(rate, n);
  if (k == 0) return population;
  const std::vector<std::size_t> chosen = sample_without_replacement(n, k, rng);
  for (std::size_t index : chosen) {
    const auto kind = static_cast<MutationKind>(rng.uniform_int(0, 2));
    apply_point_mutation(population.agents[index], kind, params, rng);
  }
  return population;
}

std::int64_t target_population_size(const Population& population,
                                    const EvolutionParams& params,
                                    double initial_mean_size) {
  if (initial_mean_size <= 0.0) {
    throw std::invalid_argument(
        "target_population_size: initial_mean_size must be > 0");
  }
  const double ratio = mean_agent_size(population) / initial_mean_size;
  const auto target = static_cast<std::int64_t>(
      std::llround(static_cast<double>(params.base_population) * ratio));
  return std::clamp(target, params.size_min, params.size_max);
}

Population generation_step(const Population& population, const Request& request,
                           const EvolutionParams& params,
                           double initial_mean_size, Rng& rng) {
  if (population.agents.empty()) {
    throw std::invalid_argument("generation_step: empty population");
  }
  const std::int64_t target =
      target_population_size(population, params, initial_mean_size);
  Population next = select(population, request, target, params, rng);
  next = crossover_step(std::move(next), params.crossover_rate, rng);
  next = mutate_step(std::move(next), params.mutation_rate, params, rng);
  next.generation = population.generation + 1;
  return next;
}

}  // namespace evopop
