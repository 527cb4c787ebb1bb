// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#include "evopop/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "evopop/config.hpp"
#include "evopop/csv_io.hpp"
#include "evopop/errors.hpp"
#include "evopop/experiment.hpp"
#include "evopop/markov.hpp"
#include "evopop/ppm.hpp"

namespace evopop::cli {
namespace {

namespace fs = std::filesystem;
using experiment::ExecutionPolicy;
using experiment::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

// Flag overrides shared by the experiment subcommands. Flags beat
// config-file values, which beat built-in defaults.
struct ExperimentFlags {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::int64_t runs = 0;
  std::int64_t generations = 0;
  double mutation = 0.0;
  double crossover = 0.0;
  std::string request;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* runs_opt = nullptr;
  CLI::Option* generations_opt = nullptr;
  CLI::Option* mutation_opt = nullptr;
  CLI::Option* crossover_opt = nullptr;
  CLI::Option* request_opt = nullptr;

  void attach(CLI::App& app, const std::string& default_out) {
    out_dir = default_out;
    app.add_option("--config", config_path, "experiment config file");
    app.add_option("--out-dir", out_dir, "output directory");
    seed_opt = app.add_option("--seed", seed, "master seed override");
    runs_opt = app.add_option("--runs", runs, "ensemble size override");
    generations_opt =
        app.add_option("--generations", generations, "horizon override");
    mutation_opt =
        app.add_option("--mutation", mutation, "mutation rate override");
    crossover_opt =
        app.add_option("--crossover", crossover, "crossover rate override");
    request_opt = app.add_option("--request", request,
                                 "explicit request, comma-separated values");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig config;
    if (!config_path.empty()) config = load_config_file(config_path);
    if (*seed_opt) config.master_seed = seed;
    if (*runs_opt) config.runs = runs;
    if (*generations_opt) config.generations = generations;
    if (*mutation_opt) config.params.mutation_rate = mutation;
    if (*crossover_opt) config.params.crossover_rate = crossover;
    if (*request_opt) {
      config = parse_config_text("request = " + request, config);
    }
    config.validate();
    return config;
  }
};

std::vector<int> parse_request_values(const std::string& text) {
  const ExperimentConfig parsed = parse_config_text("request = " + text);
  return parsed.request;
}

// "start:stop:step" (endpoints inclusive) or a single value. When the step
// divides the range, grid points are computed as exact fractions of the range
// so 0:1:0.1 yields 0, 0.1, ..., 1 without drift.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::stringstream stream(text);
  while (std::getline(stream, part, ':')) parts.push_back(part);

  auto to_double = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("grid: cannot parse '" + text +
                                  "', expected start:stop:step or a number");
    }
  };

  if (parts.size() == 1) return {to_double(parts[0])};
  if (parts.size() != 3) {
    throw std::invalid_argument("grid: expected start:stop:step, got '" + text +
                                "'");
  }
  const double start = to_double(parts[0]);
  const double stop = to_double(parts[1]);
  const double step = to_double(parts[2]);
  if (step <= 0.0 || stop < start) {
    throw std::invalid_argument("grid: need step > 0 and stop >= start");
  }
  std::vector<double> values;
  const double count = (stop - start) / step;
  const auto n = static_cast<std::int64_t>(std::llround(count));
  if (n >= 1 && std::abs(start + static_cast<double>(n) * step - stop) <=
                    step * 1e-9) {
    for (std::int64_t k = 0; k <= n; ++k) {
      values.push_back(start + (stop - start) * static_cast<double>(k) /
                                   static_cast<double>(n));
    }
  } else {
    for (double v = start; v <= stop + step * 1e-9; v += step) {
      values.push_back(std::min(v, stop));
    }
  }
  return values;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("write failed", path.string());
}

fs::path prepare_out_dir(const std::string& out_dir) {
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory", dir.string());
  return dir;
}

int cmd_run(const ExperimentFlags& flags, std::int64_t run_index) {
  ExperimentConfig config = flags.resolve();
  const Request request = experiment::resolve_request(config);
  const fs::path dir = prepare_out_dir(flags.out_dir);

  // Checkpoint recording does not touch the run's generator, so asking for
  // the final population on top of the configured checkpoints changes nothing
  // else about the trajectory.
  ExperimentConfig exec = config;
  if (std::find(exec.checkpoints.begin(), exec.checkpoints.end(),
                exec.generations) == exec.checkpoints.end()) {
    exec.checkpoints.push_back(exec.generations);
  }
  const experiment::RunTrajectory trajectory =
      experiment::run_single(exec, run_index);

  write_text_file(dir / "config_resolved.txt", config_echo_text(config, request));
  {
    std::ofstream out(dir / "fitness.csv", std::ios::binary);
    if (!out) throw IoError("cannot open for writing", (dir / "fitness.csv").string());
    io::write_fitness_csv(trajectory, out);
  }
  const std::uint64_t hash = config_hash(config, request);
  for (const auto& [generation, population] : trajectory.checkpoints) {
    io::write_population_snapshot(
        population, hash,
        dir / ("population_gen" + std::to_string(generation) + ".txt"));
    if (generation == exec.generations) {
      io::write_population_snapshot(population, hash, dir / "population_final.txt");
      if (!population.agents.empty()) {
        io::visualize_population(population, request,
                                 dir / "population_final.ppm",
                                 config.params.attr_lo, config.params.attr_hi);
      }
    }
  }
  std::cerr << "run: wrote " << dir.string() << "\n";
  return kExitOk;
}

int cmd_ensemble(const ExperimentFlags& flags, std::size_t window, double tol,
                 bool serial) {
  ExperimentConfig config = flags.resolve();
  const Request request = experiment::resolve_request(config);
  const fs::path dir = prepare_out_dir(flags.out_dir);

  const auto trajectory = experiment::run_ensemble(
      config, serial ? ExecutionPolicy::kSerial : ExecutionPolicy::kParallel);

  write_text_file(dir / "config_resolved.txt", config_echo_text(config, request));
  {
    std::ofstream out(dir / "macrostate_trajectory.csv", std::ios::binary);
    if (!out) {
      throw IoError("cannot open for writing",
                    (dir / "macrostate_trajectory.csv").string());
    }
    io::write_macro_trajectory_csv(trajectory, out);
  }

  const macrostate::MacroStateDistribution& final = trajectory.back();
  const std::int64_t universe = macrostate::label_universe_size(final);
  const double delta = macrostate::degree_of_instability(final, universe);
  std::string results;
  results += "final_generation = " + std::to_string(final.generation) + "\n";
  results += "delta = " + io::format_double(delta) + "\n";
  results += "label_universe = " + std::to_string(universe) + "\n";
  if (trajectory.size() > window && window >= 2) {
    const auto verdict = macrostate::stability_verdict(trajectory, window, tol);
    results += std::string("converged = ") +
               (verdict.converged ? "true" : "false") + "\n";
    results += std::string("nonuniform = ") +
               (verdict.nonuniform ? "true" : "false") + "\n";
    results +=
        std::string("stable = ") + (verdict.stable ? "true" : "false") + "\n";
    results += "max_tv_delta_tail = " +
               io::format_double(verdict.max_tv_delta_tail) + "\n";
    results += "window = " + std::to_string(window) + "\n";
    results += "tol = " + io::format_double(tol) + "\n";
  }
  for (const auto& [label, p] : final.probabilities) {
    results += "p_final[" + label.to_string() + "] = " + io::format_double(p) + "\n";
  }
  write_text_file(dir / "results.txt", results);
  std::cerr << "ensemble: wrote " << dir.string() << "\n";
  return kExitOk;
}

int cmd_sweep(const ExperimentFlags& flags, const std::string& mutation_grid,
              const std::string& crossover_grid, bool serial) {
  ExperimentConfig config = flags.resolve();
  const Request request = experiment::resolve_request(config);
  const std::vector<double> mutations = parse_grid(mutation_grid);
  const std::vector<double> crossovers = parse_grid(crossover_grid);
  const fs::path dir = prepare_out_dir(flags.out_dir);

  const experiment::SweepResult result = experiment::sweep(
      config, mutations, crossovers,
      serial ? ExecutionPolicy::kSerial : ExecutionPolicy::kParallel);

  write_text_file(dir / "config_resolved.txt", config_echo_text(config, request));
  {
    std::ofstream out(dir / "sweep.csv", std::ios::binary);
    if (!out) throw IoError("cannot open for writing", (dir / "sweep.csv").string());
    io::write_sweep_csv(result, out);
  }
  std::cerr << "sweep: wrote " << dir.string() << "\n";
  return kExitOk;
}

int cmd_visualize(const std::string& snapshot_path, const std::string& out_path,
                  const std::string& config_path, const std::string& request_text) {
  ExperimentConfig config;
  if (!config_path.empty()) config = load_config_file(config_path);
  if (!request_text.empty()) config.request = parse_request_values(request_text);
  config.validate();
  const Request request = experiment::resolve_request(config);

  const Population population = io::load_population_snapshot(fs::path(snapshot_path));
  io::visualize_population(population, request, fs::path(out_path),
                           config.params.attr_lo, config.params.attr_hi);
  std::cerr << "visualize: wrote " << out_path << "\n";
  return kExitOk;
}

struct MarkovFlags {
  std::string matrix_path;
  std::string out_path;
  std::string propagate_path;
  std::string equilibrium_path;
  bool invariant = false;
  bool do_classify = false;
  std::int64_t power = -1;
  double tol = 1e-12;
  std::size_t horizon = 100000;
};

int cmd_markov(const MarkovFlags& flags) {
  const StochasticMatrix matrix = io::load_matrix_csv(fs::path(flags.matrix_path));

  std::ofstream file_out;
  std::ostream* out = &std::cout;
  if (!flags.out_path.empty()) {
    file_out.open(flags.out_path, std::ios::binary);
    if (!file_out) throw IoError("cannot open for writing", flags.out_path);
    out = &file_out;
  }

  bool did_something = false;
  if (flags.do_classify) {
    const auto classification = markov::classify(matrix);
    *out << "irreducible = " << (classification.irreducible ? "true" : "false")
         << "\n";
    *out << "aperiodic = " << (classification.aperiodic ? "true" : "false")
         << "\n";
    *out << "periods = ";
    for (std::size_t i = 0; i < classification.period_per_state.size(); ++i) {
      if (i > 0) *out << ',';
      *out << classification.period_per_state[i];
    }
    *out << "\n";
    did_something = true;
  }
  if (flags.power >= 0) {
    io::save_matrix_csv(
        markov::n_step(matrix, static_cast<std::uint64_t>(flags.power)), *out);
    did_something = true;
  }
  if (!flags.propagate_path.empty()) {
    const Measure lambda = io::load_measure_csv(fs::path(flags.propagate_path));
    io::save_measure_csv(markov::propagate(lambda, matrix), matrix.labels(), *out);
    did_something = true;
  }
  if (!flags.equilibrium_path.empty()) {
    const Measure lambda = io::load_measure_csv(fs::path(flags.equilibrium_path));
    const auto result =
        markov::equilibrium_limit(lambda, matrix, flags.tol, flags.horizon);
    *out << "converged = " << (result.converged ? "true" : "false") << "\n";
    *out << "steps = " << result.steps << "\n";
    io::save_measure_csv(result.limit, matrix.labels(), *out);
    did_something = true;
  }
  if (flags.invariant) {
    io::save_measure_csv(markov::invariant_distribution(matrix, flags.tol),
                         matrix.labels(), *out);
    did_something = true;
  }
  if (!did_something) {
    throw std::invalid_argument(
        "markov: pick at least one of --invariant, --classify, --power, "
        "--propagate, --equilibrium");
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"evolving agent population simulator and Markov stability toolkit"};
  app.require_subcommand(1);

  ExperimentFlags run_flags;
  std::int64_t run_index = 0;
  CLI::App* run_cmd =
      app.add_subcommand("run", "single evolutionary run, fitness curve + snapshots");
  run_flags.attach(*run_cmd, "out/run");
  run_cmd->add_option("--run-index", run_index, "index of the run to execute");

  ExperimentFlags ensemble_flags;
  std::size_t window = 50;
  double ensemble_tol = 1e-3;
  bool ensemble_serial = false;
  CLI::App* ensemble_cmd = app.add_subcommand(
      "ensemble", "macro-state occupation estimates over many runs");
  ensemble_flags.attach(*ensemble_cmd, "out/ensemble");
  ensemble_cmd->add_option("--window", window, "stability check window");
  ensemble_cmd->add_option("--tol", ensemble_tol, "stability check tolerance");
  ensemble_cmd->add_flag("--serial", ensemble_serial,
                         "use the serial reference ensemble loop");

  ExperimentFlags sweep_flags;
  std::string mutation_grid = "0:1:0.1";
  std::string crossover_grid = "0:1:0.1";
  bool sweep_serial = false;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "degree-of-instability grid over mutation x crossover rates");
  sweep_flags.attach(*sweep_cmd, "out/sweep");
  sweep_cmd->add_option("--mutation-grid", mutation_grid,
                        "start:stop:step or single value");
  sweep_cmd->add_option("--crossover-grid", crossover_grid,
                        "start:stop:step or single value");
  sweep_cmd->add_flag("--serial", sweep_serial,
                      "use the serial reference ensemble loop");

  std::string viz_snapshot, viz_out = "population.ppm", viz_config, viz_request;
  CLI::App* viz_cmd =
      app.add_subcommand("visualize", "render a population snapshot as PPM");
  viz_cmd->add_option("--snapshot", viz_snapshot, "population snapshot file")
      ->required();
  viz_cmd->add_option("--out", viz_out, "output image path");
  viz_cmd->add_option("--config", viz_config, "config supplying the request");
  viz_cmd->add_option("--request", viz_request,
                      "explicit request, comma-separated values");

  MarkovFlags markov_flags;
  CLI::App* markov_cmd =
      app.add_subcommand("markov", "finite Markov chain kernel on CSV matrices");
  markov_cmd->add_option("--matrix", markov_flags.matrix_path, "matrix CSV")
      ->required();
  markov_cmd->add_option("--out", markov_flags.out_path,
                         "write results here instead of stdout");
  markov_cmd->add_flag("--invariant", markov_flags.invariant,
                       "invariant distribution by power iteration");
  markov_cmd->add_flag("--classify", markov_flags.do_classify,
                       "irreducibility, aperiodicity and periods");
  markov_cmd->add_option("--power", markov_flags.power, "emit P^t for this t");
  markov_cmd->add_option("--propagate", markov_flags.propagate_path,
                         "measure CSV to advance one step");
  markov_cmd->add_option("--equilibrium", markov_flags.equilibrium_path,
                         "measure CSV to iterate to its limit");
  markov_cmd->add_option("--tol", markov_flags.tol,
                         "tolerance for --invariant / --equilibrium");
  markov_cmd->add_option("--horizon", markov_flags.horizon,
                         "step cap for --equilibrium");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_flags, run_index);
    if (ensemble_cmd->parsed()) {
      return cmd_ensemble(ensemble_flags, window, ensemble_tol, ensemble_serial);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep_flags, mutation_grid, crossover_grid, sweep_serial);
    }
    if (viz_cmd->parsed()) {
      return cmd_visualize(viz_snapshot, viz_out, viz_config, viz_request);
    }
    if (markov_cmd->parsed()) return cmd_markov(markov_flags);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace evopop::cli
