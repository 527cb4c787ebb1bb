// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "evopop/evolution.hpp"
#include "evopop/macrostate.hpp"

namespace evopop::experiment {

/// Everything needed to reproduce an experiment bit-exactly. The request is
/// either given explicitly or drawn once from request_seed; run r of an
/// ensemble owns Rng(mix_seed(master_seed, r)).
struct ExperimentConfig {
  EvolutionParams params;
  std::vector<int> request;  // explicit request; wins over request_seed
  std::uint64_t request_seed = 1;
  std::int64_t request_length = 5;
  std::int64_t generations = 1000;
  std::int64_t runs = 200;
  std::uint64_t master_seed = 1;
  std::vector<std::int64_t> checkpoints;  // generations to snapshot

  void validate() const;
};

/// The request the config denotes: the explicit one if set, otherwise
/// request_length values drawn uniformly from the attribute range using
/// request_seed.
Request resolve_request(const ExperimentConfig& config);

struct GenerationStats {
  double max_fitness = 0.0;
  double mean_fitness = 0.0;
  std::size_t population_size = 0;
  macrostate::MacroLabel label = macrostate::MacroLabel::extinct();
};

/// Per-generation record of one run (generations + 1 rows, generation 0
/// first) plus any requested population snapshots.
struct RunTrajectory {
  std::vector<GenerationStats> generations;
  std::vector<std::pair<std::int64_t, Population>> checkpoints;
  double initial_mean_size = 0.0;
};

/// One deterministic run. An extinct population is terminal: the run halts
/// and the remaining generations are recorded as EXTINCT with zero fitness.
RunTrajectory run_single(const ExperimentConfig& config, std::int64_t run_index);

/// Parallel runs the OpenMP ensemble loop; serial is the reference
/// implementation. Both produce identical results by construction (each run
/// owns its seed and results are reduced in run order).
enum class ExecutionPolicy { kSerial, kParallel };

/// Executes `runs` independent runs and estimates the macro-state occupation
/// distribution at every generation (generations + 1 entries).
std::vector<macrostate::MacroStateDistribution> run_ensemble(
    const ExperimentConfig& config,
    ExecutionPolicy policy = ExecutionPolicy::kParallel);

struct SweepCell {
  double mutation_rate = 0.0;
  double crossover_rate = 0.0;
  double delta = 0.0;         // degree of instability of the final distribution
  std::int64_t runs = 0;
  std::int64_t n_labels = 0;  // label universe size used as the entropy base
};

struct SweepResult {
  std::vector<double> mutation_grid;
  std::vector<double> crossover_grid;
  std::vector<SweepCell> cells;  // row-major: mutation outer, crossover inner
};

/// Runs one ensemble per (mutation, crossover) cell and scores its
/// final-generation distribution's degree of instability. Each cell gets its
/// own master seed derived from the config's, so cells are independent.
SweepResult sweep(const ExperimentConfig& config,
                  std::span<const double> mutation_grid,
                  std::span<const double> crossover_grid,
                  ExecutionPolicy policy = ExecutionPolicy::kParallel);

}  // namespace evopop::experiment
