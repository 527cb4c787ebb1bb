// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "evopop/experiment.hpp"
#include "evopop/macrostate.hpp"
#include "evopop/measure.hpp"
#include "evopop/stochastic_matrix.hpp"

namespace evopop::io {

// Matrices and measures travel as CSV: a header row of state labels, then one
// row per state (a single row for a measure). Doubles are written with
// shortest round-trip formatting, so save/load is lossless.

void save_matrix_csv(const StochasticMatrix& matrix, std::ostream& out);
void save_matrix_csv(const StochasticMatrix& matrix,
                     const std::filesystem::path& path);
StochasticMatrix load_matrix_csv(std::istream& in);
StochasticMatrix load_matrix_csv(const std::filesystem::path& path);

void save_measure_csv(const Measure& measure,
                      std::span<const std::string> labels, std::ostream& out);
Measure load_measure_csv(std::istream& in);
Measure load_measure_csv(const std::filesystem::path& path);

/// Columns: generation, max_fitness, mean_fitness, population_size.
void write_fitness_csv(const experiment::RunTrajectory& trajectory,
                       std::ostream& out);

/// Columns: generation, label, probability — one row per label in each
/// generation's support.
void write_macro_trajectory_csv(
    std::span<const macrostate::MacroStateDistribution> trajectory,
    std::ostream& out);

/// Columns: mutation_rate, crossover_rate, delta, runs, N.
void write_sweep_csv(const experiment::SweepResult& result, std::ostream& out);

/// Snapshot format: '# generation=<g> config_hash=<16 hex digits>' followed
/// by one agent per line as comma-separated attributes.
void write_population_snapshot(const Population& population,
                               std::uint64_t config_hash, std::ostream& out);
void write_population_snapshot(const Population& population,
                               std::uint64_t config_hash,
                               const std::filesystem::path& path);
Population load_population_snapshot(std::istream& in,
                                    std::uint64_t* config_hash = nullptr);
Population load_population_snapshot(const std::filesystem::path& path,
                                    std::uint64_t* config_hash = nullptr);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace evopop::io
