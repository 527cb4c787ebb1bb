// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "evopop/agent.hpp"
#include "evopop/rng.hpp"

namespace evopop {

/// Knobs for one evolutionary process. Defaults reproduce the bundled
/// experiments: 10% operator rates, 300 starting agents of 3..6 attributes
/// drawn from [1,100].
struct EvolutionParams {
  double mutation_rate = 0.1;
  double crossover_rate = 0.1;
  std::int64_t base_population = 300;
  int init_attr_min = 3;
  int init_attr_max = 6;
  int attr_lo = 1;
  int attr_hi = 100;
  double parsimony_strength = 1.0;
  std::int64_t size_min = 1;   // dynamic population size clamp
  std::int64_t size_max = 1200;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct Population {
  std::vector<Agent> agents;
  std::int64_t generation = 0;
};

/// Mean number of attributes per agent; population must be non-empty.
double mean_agent_size(const Population& population);

/// base_population agents with uniform length in [init_attr_min,
/// init_attr_max] and uniform attributes in [attr_lo, attr_hi]; generation 0.
Population init_population(const EvolutionParams& params, Rng& rng);

/// Parsimony-adjusted fitness of every agent, evaluated against the
/// population's current mean size.
std::vector<double> selection_weights(const Population& population,
                                      const Request& request,
                                      const EvolutionParams& params);

/// Fitness-proportional, non-elitist selection: `target_size` independent
/// draws with replacement, each proportional to parsimony fitness. No agent
/// is guaranteed to survive. Generation counter is carried over unchanged.
Population select(const Population& population, const Request& request,
                  std::int64_t target_size, const EvolutionParams& params,
                  Rng& rng);

/// Variable-length single-point crossover of two parents at the given cut
/// positions (0..length, measured in attributes kept by the head). Tails are
/// swapped; an empty child is repaired to the first attribute of the longer
/// parent.
std::pair<Agent, Agent> crossover_pair(const Agent& a, const Agent& b,
                                       std::size_t cut_a, std::size_t cut_b);

/// Picks round(rate * n) agents without replacement, pairs them up (an odd
/// leftover is kept unchanged) and replaces each pair with its crossover
/// offspring.
Population crossover_step(Population population, double rate, Rng& rng);

enum class MutationKind { kInsert, kReplace, kDelete };

/// One point mutation of the given kind; positions and inserted/replacement
/// values are drawn uniformly. Deleting from a single-attribute agent is
/// re-drawn as a replacement so agents never empty out.
void apply_point_mutation(Agent& agent, MutationKind kind,
                          const EvolutionParams& params, Rng& rng);

/// Picks round(rate * n) agents without replacement and applies exactly one
/// point mutation to each, the kind drawn uniformly from
/// {insert, replace, delete}.
Population mutate_step(Population population, double rate,
                       const EvolutionParams& params, Rng& rng);

/// Dynamic population sizing: base_population scaled by the ratio of the
/// current mean agent size to the initial one, clamped to
/// [size_min, size_max].
std::int64_t target_population_size(const Population& population,
                                    const EvolutionParams& params,
                                    double initial_mean_size);

/// One full generation: parsimony-weighted selection to the dynamic target
/// size, then crossover, then mutation. Advances the generation counter by
/// exactly 1.
Population generation_step(const Population& population, const Request& request,
                           const EvolutionParams& params,
                           double initial_mean_size, Rng& rng);

}  // namespace evopop
