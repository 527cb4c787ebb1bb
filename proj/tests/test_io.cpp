// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "evopop/config.hpp"
#include "evopop/csv_io.hpp"
#include "evopop/experiment.hpp"
#include "evopop/ppm.hpp"
#include "evopop/rng.hpp"

using namespace evopop;
using namespace evopop::experiment;

TEST_CASE("matrix csv round trip is lossless") {
  Rng rng(17);
  std::vector<double> entries(9);
  for (std::size_t i = 0; i < 3; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      entries[i * 3 + j] = rng.uniform01() + 0.01;
      sum += entries[i * 3 + j];
    }
    for (std::size_t j = 0; j < 3; ++j) entries[i * 3 + j] /= sum;
  }
  const StochasticMatrix matrix(3, entries, {"a", "b", "c"});

  std::stringstream stream;
  io::save_matrix_csv(matrix, stream);
  const StochasticMatrix loaded = io::load_matrix_csv(stream);
  REQUIRE(loaded.size() == 3);
  CHECK(loaded.labels() == std::vector<std::string>{"a", "b", "c"});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(loaded(i, j) == matrix(i, j));
}

TEST_CASE("matrix csv rejects malformed input") {
  std::stringstream missing_row("a,b\n0.5,0.5\n");
  CHECK_THROWS_AS(io::load_matrix_csv(missing_row), std::invalid_argument);
  std::stringstream ragged("a,b\n0.5,0.5\n1.0\n");
  CHECK_THROWS_AS(io::load_matrix_csv(ragged), std::invalid_argument);
  std::stringstream not_numbers("a,b\nx,y\n0.5,0.5\n");
  CHECK_THROWS_AS(io::load_matrix_csv(not_numbers), std::invalid_argument);
  std::stringstream bad_rows("a,b\n0.9,0.3\n0.5,0.5\n");
  CHECK_THROWS_AS(io::load_matrix_csv(bad_rows), std::invalid_argument);
}

TEST_CASE("measure csv round trip") {
  const Measure measure({0.25, 0.5, 0.25});
  std::stringstream stream;
  const std::vector<std::string> labels{"x", "y", "z"};
  io::save_measure_csv(measure, labels, stream);
  const Measure loaded = io::load_measure_csv(stream);
  REQUIRE(loaded.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(loaded[i] == measure[i]);
}

TEST_CASE("fitness csv has one row per generation plus a header") {
  ExperimentConfig config;
  config.params.base_population = 30;
  config.generations = 25;
  config.runs = 1;
  const RunTrajectory trajectory = run_single(config, 0);
  std::stringstream stream;
  io::write_fitness_csv(trajectory, stream);
  std::string line;
  std::getline(stream, line);
  CHECK(line == "generation,max_fitness,mean_fitness,population_size");
  std::size_t rows = 0;
  while (std::getline(stream, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == static_cast<std::size_t>(config.generations) + 1);
}

TEST_CASE("no-variation runs emit constant fitness columns") {
  ExperimentConfig config;
  config.params.base_population = 30;
  config.params.mutation_rate = 0.0;
  config.params.crossover_rate = 0.0;
  config.generations = 15;
  // A run whose best class cannot be lost: every agent identical.
  config.params.init_attr_min = config.params.init_attr_max = 3;
  const RunTrajectory trajectory = run_single(config, 2);
  std::stringstream stream;
  io::write_fitness_csv(trajectory, stream);
  std::string header;
  std::getline(stream, header);
  // max fitness column can only repeat values once the genotype set froze;
  // here we only require max >= mean on every row.
  std::string line;
  while (std::getline(stream, line)) {
    std::stringstream fields(line);
    std::string generation, max_f, mean_f;
    std::getline(fields, generation, ',');
    std::getline(fields, max_f, ',');
    std::getline(fields, mean_f, ',');
    CHECK(std::stod(mean_f) <= std::stod(max_f) + 1e-15);
  }
}

TEST_CASE("macro trajectory csv lists every generation's support") {
  ExperimentConfig config;
  config.params.base_population = 20;
  config.generations = 5;
  config.runs = 4;
  const auto trajectory = run_ensemble(config);
  std::stringstream stream;
  io::write_macro_trajectory_csv(trajectory, stream);
  std::string line;
  std::getline(stream, line);
  CHECK(line == "generation,label,probability");
  std::size_t rows = 0;
  while (std::getline(stream, line)) ++rows;
  CHECK(rows >= trajectory.size());  // at least one label per generation
}

TEST_CASE("sweep csv columns") {
  SweepResult result;
  result.mutation_grid = {0.0};
  result.crossover_grid = {0.5};
  result.cells = {{0.0, 0.5, 0.25, 10, 3}};
  std::stringstream stream;
  io::write_sweep_csv(result, stream);
  std::string line;
  std::getline(stream, line);
  CHECK(line == "mutation_rate,crossover_rate,delta,runs,N");
  std::getline(stream, line);
  CHECK(line == "0,0.5,0.25,10,3");
}

TEST_CASE("population snapshot round trip") {
  Population population;
  population.generation = 17;
  population.agents = {Agent{{1, 2, 3}}, Agent{{99}}, Agent{{42, 42}}};
  std::stringstream stream;
  io::write_population_snapshot(population, 0xdeadbeefcafef00dULL, stream);

  std::uint64_t hash = 0;
  const Population loaded = io::load_population_snapshot(stream, &hash);
  CHECK(hash == 0xdeadbeefcafef00dULL);
  CHECK(loaded.generation == 17);
  REQUIRE(loaded.agents.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(loaded.agents[i].attributes == population.agents[i].attributes);
  }

  std::stringstream headerless("1,2,3\n");
  CHECK_THROWS_AS(io::load_population_snapshot(headerless), std::invalid_argument);
}

TEST_CASE("config text round trip and rejection of unknown keys") {
  ExperimentConfig config;
  config.params.mutation_rate = 0.25;
  config.params.crossover_rate = 0.75;
  config.params.base_population = 123;
  config.generations = 77;
  config.runs = 11;
  config.master_seed = 555;
  config.request = {4, 5, 6};
  config.checkpoints = {0, 77};

  const Request request = resolve_request(config);
  const std::string echo = config_echo_text(config, request);
  const ExperimentConfig parsed = parse_config_text(echo);
  CHECK(parsed.params.mutation_rate == config.params.mutation_rate);
  CHECK(parsed.params.crossover_rate == config.params.crossover_rate);
  CHECK(parsed.params.base_population == config.params.base_population);
  CHECK(parsed.generations == config.generations);
  CHECK(parsed.runs == config.runs);
  CHECK(parsed.master_seed == config.master_seed);
  CHECK(parsed.request == config.request);
  CHECK(parsed.checkpoints == config.checkpoints);
  // The echo is canonical: echoing the parse reproduces it byte for byte.
  CHECK(config_echo_text(parsed, resolve_request(parsed)) == echo);

  CHECK_THROWS_WITH_AS(parse_config_text("mutation = 0.5\n"),
                       doctest::Contains("mutation"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("runs = ten\n"),
                       doctest::Contains("runs"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("runs 10\n"), std::invalid_argument);
}

TEST_CASE("config parsing handles comments, blanks, and overrides") {
  const std::string text =
      "# experiment settings\n"
      "mutation_rate = 0.3   # tweak\n"
      "\n"
      "runs = 42\n";
  const ExperimentConfig parsed = parse_config_text(text);
  CHECK(parsed.params.mutation_rate == 0.3);
  CHECK(parsed.runs == 42);
  CHECK(parsed.generations == 1000);  // default untouched

  ExperimentConfig base;
  base.generations = 5;
  const ExperimentConfig layered = parse_config_text("runs = 7\n", base);
  CHECK(layered.generations == 5);
  CHECK(layered.runs == 7);
}

TEST_CASE("config hash changes with the config") {
  ExperimentConfig a;
  ExperimentConfig b;
  b.master_seed = a.master_seed + 1;
  const Request request = resolve_request(a);
  CHECK(config_hash(a, request) != config_hash(b, request));
  CHECK(config_hash(a, request) == config_hash(a, request));
}

TEST_CASE("population visualization endpoints and grouping") {
  Population population;
  population.agents = {Agent{{100, 1}}, Agent{{100, 1}}, Agent{{50}}};
  const Request request{{100}};
  std::stringstream stream;
  io::visualize_population(population, request, stream);

  const std::string data = stream.str();
  // Header: P6, width = widest agent, height = agent count, maxval 255.
  CHECK(data.rfind("P6\n2 3\n255\n", 0) == 0);
  const std::size_t pixels = data.size() - std::string("P6\n2 3\n255\n").size();
  REQUIRE(pixels == 2 * 3 * 3);
  const unsigned char* rgb = reinterpret_cast<const unsigned char*>(
      data.data() + std::string("P6\n2 3\n255\n").size());
  // Rows sorted by fitness: the two identical (100,1) agents come first.
  CHECK(rgb[0] == 255);  // attribute 100 -> lightest
  CHECK(rgb[3] == 0);    // attribute 1 -> darkest
  // Identical rows grouped together.
  for (int i = 0; i < 6; ++i) CHECK(rgb[i] == rgb[6 + i]);
  // Padding cell of the short agent is the blue filler, not a gray.
  CHECK(rgb[12 + 3] != rgb[12 + 4]);

  Population empty;
  std::stringstream sink;
  CHECK_THROWS_AS(io::visualize_population(empty, request, sink),
                  std::invalid_argument);
}

TEST_CASE("identical agents render identical rows") {
  Population population;
  population.agents.assign(4, Agent{{10, 20, 30}});
  std::stringstream stream;
  io::visualize_population(population, Request{{10}}, stream);
  const std::string data = stream.str();
  const std::string header = "P6\n3 4\n255\n";
  REQUIRE(data.rfind(header, 0) == 0);
  const std::size_t row_bytes = 3 * 3;
  const char* base = data.data() + header.size();
  for (std::size_t r = 1; r < 4; ++r) {
    CHECK(std::equal(base, base + row_bytes, base + r * row_bytes));
  }
}
