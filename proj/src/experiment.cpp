// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#include "evopop/experiment.hpp"

#include <algorithm>
#include <stdexcept>

#include "evopop/rng.hpp"

namespace evopop::experiment {
namespace {

// Tag folded into request_seed so the request stream never collides with a
// run stream of the same master seed.
constexpr std::uint64_t kRequestStreamTag = 0x7265717565737431ULL;

GenerationStats snapshot_stats(const Population& population,
                               const Request& request) {
  GenerationStats stats;
  stats.population_size = population.agents.size();
  stats.label = macrostate::classify(population, request);
  if (population.agents.empty()) return stats;
  double sum = 0.0;
  double best = 0.0;
  for (const Agent& agent : population.agents) {
    const double f = fitness(agent, request);
    sum += f;
    best = std::max(best, f);
  }
  stats.max_fitness = best;
  stats.mean_fitness = sum / static_cast<double>(population.agents.size());
  return stats;
}

RunTrajectory run_single_resolved(const ExperimentConfig& config,
                                  const Request& request,
                                  std::int64_t run_index) {
  Rng rng(mix_seed(config.master_seed, static_cast<std::uint64_t>(run_index)));
  RunTrajectory trajectory;
  trajectory.generations.reserve(static_cast<std::size_t>(config.generations) + 1);

  Population population = init_population(config.params, rng);
  trajectory.initial_mean_size = mean_agent_size(population);
  trajectory.generations.push_back(snapshot_stats(population, request));

  auto want_checkpoint = [&](std::int64_t g) {
    return std::find(config.checkpoints.begin(), config.checkpoints.end(), g) !=
           config.checkpoints.end();
  };
  if (want_checkpoint(0)) trajectory.checkpoints.emplace_back(0, population);

  for (std::int64_t g = 1; g <= config.generations; ++g) {
    if (population.agents.empty()) break;
    population = generation_step(population, request, config.params,
                                 trajectory.initial_mean_size, rng);
    trajectory.generations.push_back(snapshot_stats(population, request));
    if (want_checkpoint(g)) trajectory.checkpoints.emplace_back(g, population);
  }
  // An extinct population is absorbing; label any unreached generations.
  while (trajectory.generations.size() <
         static_cast<std::size_t>(config.generations) + 1) {
    trajectory.generations.push_back(GenerationStats{});
  }
  return trajectory;
}

}  // namespace

void ExperimentConfig::validate() const {
  params.validate();
  if (generations < 1) {
    throw std::invalid_argument("ExperimentConfig: generations must be >= 1");
  }
  if (runs < 1) {
    throw std::invalid_argument("ExperimentConfig: runs must be >= 1");
  }
  if (request_length < 1) {
    throw std::invalid_argument("ExperimentConfig: request_length must be >= 1");
  }
  for (int r : request) {
    if (r < params.attr_lo || r > params.attr_hi) {
      throw std::invalid_argument(
          "ExperimentConfig: request value outside attribute range");
    }
  }
  for (std::int64_t c : checkpoints) {
    if (c < 0 || c > generations) {
      throw std::invalid_argument(
          "ExperimentConfig: checkpoint outside [0, generations]");
    }
  }
}

Request resolve_request(const ExperimentConfig& config) {
  if (!config.request.empty()) return Request{config.request};
  Rng rng(mix_seed(config.request_seed, kRequestStreamTag));
  Request request;
  request.required.resize(static_cast<std::size_t>(config.request_length));
  for (int& r : request.required) {
    r = static_cast<int>(
        rng.uniform_int(config.params.attr_lo, config.params.attr_hi));
  }
  return request;
}

RunTrajectory run_single(const ExperimentConfig& config, std::int64_t run_index) {
  config.validate();
  if (run_index < 0) {
    throw std::invalid_argument("run_single: run_index must be >= 0");
  }
  return run_single_resolved(config, resolve_request(config), run_index);
}

std::vector<macrostate::MacroStateDistribution> run_ensemble(
    const ExperimentConfig& config, ExecutionPolicy policy) {
  config.validate();
  const Request request = resolve_request(config);
  const std::size_t runs = static_cast<std::size_t>(config.runs);
  const std::size_t horizon = static_cast<std::size_t>(config.generations) + 1;

  // Row r holds run r's macro-label per generation; runs fill independent
  // rows, so the parallel loop needs no synchronization and the reduction
  // below is identical for any execution order.
  std::vector<macrostate::MacroLabel> labels(
      runs * horizon, macrostate::MacroLabel::extinct());
  const bool parallel = policy == ExecutionPolicy::kParallel;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(runs); ++r) {
    const RunTrajectory trajectory = run_single_resolved(config, request, r);
    for (std::size_t g = 0; g < horizon; ++g) {
      labels[static_cast<std::size_t>(r) * horizon + g] =
          trajectory.generations[g].label;
    }
  }

  std::vector<macrostate::MacroStateDistribution> by_generation;
  by_generation.reserve(horizon);
  std::vector<macrostate::GenerationLabel> column(runs);
  for (std::size_t g = 0; g < horizon; ++g) {
    for (std::size_t r = 0; r < runs; ++r) {
      column[r] = {static_cast<std::int64_t>(g), labels[r * horizon + g]};
    }
    by_generation.push_back(macrostate::occupation_estimate(column));
  }
  return by_generation;
}

SweepResult sweep(const ExperimentConfig& config,
                  std::span<const double> mutation_grid,
                  std::span<const double> crossover_grid,
                  ExecutionPolicy policy) {
  if (mutation_grid.empty() || crossover_grid.empty()) {
    throw std::invalid_argument("sweep: grids must be non-empty");
  }
  for (double rate : mutation_grid) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
      throw std::invalid_argument("sweep: mutation rate outside [0,1]");
    }
  }
  for (double rate : crossover_grid) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
      throw std::invalid_argument("sweep: crossover rate outside [0,1]");
    }
  }
  SweepResult result;
  result.mutation_grid.assign(mutation_grid.begin(), mutation_grid.end());
  result.crossover_grid.assign(crossover_grid.begin(), crossover_grid.end());
  result.cells.reserve(mutation_grid.size() * crossover_grid.size());

  std::uint64_t cell_index = 0;
  for (double mutation : mutation_grid) {
    for (double crossover : crossover_grid) {
      ExperimentConfig cell = config;
      cell.params.mutation_rate = mutation;
      cell.params.crossover_rate = crossover;
      // Decorrelate cells while keeping the whole sweep a pure function of
      // the configured master seed.
      cell.master_seed = mix_seed(config.master_seed, ++cell_index);
      const auto trajectory = run_ensemble(cell, policy);
      const macrostate::MacroStateDistribution& final = trajectory.back();
      const std::int64_t universe = macrostate::label_universe_size(final);
      result.cells.push_back({mutation, crossover,
                              macrostate::degree_of_instability(final, universe),
                              config.runs, universe});
    }
  }
  return result;
}

}  // namespace evopop::experiment
