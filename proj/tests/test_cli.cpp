// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "evopop/cli.hpp"
#include "evopop/csv_io.hpp"

namespace fs = std::filesystem;

namespace {

int cli(std::vector<std::string> args) {
  std::vector<const char*> argv;
  argv.push_back("evopop");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return evopop::cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("evopop_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out);
  out << text;
}

}  // namespace

TEST_CASE("markov subcommand computes the invariant distribution from CSV") {
  const fs::path dir = temp_dir("markov");
  write(dir / "m.csv", "s0,s1\n0.9,0.1\n0.2,0.8\n");
  const fs::path out = dir / "invariant.csv";
  REQUIRE(cli({"markov", "--matrix", (dir / "m.csv").string(), "--invariant",
               "--out", out.string()}) == 0);
  const auto pi = evopop::io::load_measure_csv(out);
  REQUIRE(pi.size() == 2);
  CHECK(pi[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(pi[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("markov subcommand classifies and propagates") {
  const fs::path dir = temp_dir("markov2");
  write(dir / "m.csv", "s0,s1\n0,1\n1,0\n");
  write(dir / "lambda.csv", "s0,s1\n1,0\n");
  const fs::path out = dir / "out.txt";
  REQUIRE(cli({"markov", "--matrix", (dir / "m.csv").string(), "--classify",
               "--propagate", (dir / "lambda.csv").string(), "--out",
               out.string()}) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("irreducible = true") != std::string::npos);
  CHECK(text.find("aperiodic = false") != std::string::npos);
  CHECK(text.find("periods = 2,2") != std::string::npos);
  CHECK(text.find("0,1") != std::string::npos);  // propagated measure
}

TEST_CASE("markov subcommand requires an action and a readable matrix") {
  const fs::path dir = temp_dir("markov3");
  write(dir / "m.csv", "s0,s1\n0.9,0.1\n0.2,0.8\n");
  CHECK(cli({"markov", "--matrix", (dir / "m.csv").string()}) == 1);
  CHECK(cli({"markov", "--matrix", (dir / "missing.csv").string(),
             "--invariant"}) == 2);
}

TEST_CASE("run subcommand is deterministic byte for byte") {
  const fs::path dir_a = temp_dir("run_a");
  const fs::path dir_b = temp_dir("run_b");
  const std::vector<std::string> common{
      "run",          "--mutation", "0",    "--crossover", "0",
      "--seed",       "7",          "--generations", "25"};
  auto with_out = [&](const fs::path& dir) {
    std::vector<std::string> args = common;
    args.push_back("--out-dir");
    args.push_back(dir.string());
    // keep it small
    args.push_back("--config");
    args.push_back((dir / "cfg.txt").string());
    return args;
  };
  write(dir_a / "cfg.txt", "base_population = 40\n");
  write(dir_b / "cfg.txt", "base_population = 40\n");
  REQUIRE(cli(with_out(dir_a)) == 0);
  REQUIRE(cli(with_out(dir_b)) == 0);
  CHECK(slurp(dir_a / "fitness.csv") == slurp(dir_b / "fitness.csv"));
  CHECK(slurp(dir_a / "population_final.txt") ==
        slurp(dir_b / "population_final.txt"));
  CHECK(slurp(dir_a / "config_resolved.txt") ==
        slurp(dir_b / "config_resolved.txt"));
  CHECK(fs::exists(dir_a / "population_final.ppm"));
}

TEST_CASE("resolved config echo reproduces the run") {
  const fs::path dir = temp_dir("echo");
  write(dir / "cfg.txt", "base_population = 40\ngenerations = 20\n");
  REQUIRE(cli({"run", "--config", (dir / "cfg.txt").string(), "--seed", "3",
               "--out-dir", (dir / "first").string()}) == 0);
  // Re-run purely from the echoed config.
  REQUIRE(cli({"run", "--config", (dir / "first" / "config_resolved.txt").string(),
               "--out-dir", (dir / "second").string()}) == 0);
  CHECK(slurp(dir / "first" / "fitness.csv") ==
        slurp(dir / "second" / "fitness.csv"));
  CHECK(slurp(dir / "first" / "population_final.txt") ==
        slurp(dir / "second" / "population_final.txt"));
}

TEST_CASE("invalid rates are rejected before any computation") {
  const fs::path dir = temp_dir("badrate");
  CHECK(cli({"run", "--mutation", "1.5", "--out-dir", dir.string()}) == 1);
  CHECK(cli({"sweep", "--mutation-grid", "0:2:0.5", "--out-dir",
             dir.string()}) == 1);
  CHECK(cli({"nonsense"}) == 1);
  CHECK(cli({"run", "--config", (dir / "missing.cfg").string()}) == 2);
}

TEST_CASE("ensemble subcommand writes trajectory and results") {
  const fs::path dir = temp_dir("ensemble");
  write(dir / "cfg.txt",
        "base_population = 30\ngenerations = 40\nruns = 8\nmaster_seed = 11\n");
  REQUIRE(cli({"ensemble", "--config", (dir / "cfg.txt").string(), "--out-dir",
               (dir / "out").string(), "--window", "10", "--serial"}) == 0);
  CHECK(fs::exists(dir / "out" / "config_resolved.txt"));
  CHECK(fs::exists(dir / "out" / "macrostate_trajectory.csv"));
  const std::string results = slurp(dir / "out" / "results.txt");
  CHECK(results.find("delta = ") != std::string::npos);
  CHECK(results.find("label_universe = ") != std::string::npos);
  CHECK(results.find("converged = ") != std::string::npos);
}

TEST_CASE("sweep subcommand writes the grid csv") {
  const fs::path dir = temp_dir("sweep");
  write(dir / "cfg.txt",
        "base_population = 25\ngenerations = 15\nruns = 4\n");
  REQUIRE(cli({"sweep", "--config", (dir / "cfg.txt").string(), "--out-dir",
               (dir / "out").string(), "--mutation-grid", "0:1:0.5",
               "--crossover-grid", "0.1"}) == 0);
  const std::string csv = slurp(dir / "out" / "sweep.csv");
  std::stringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "mutation_rate,crossover_rate,delta,runs,N");
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 3);  // mutation 0, 0.5, 1 at a single crossover rate
}

TEST_CASE("visualize subcommand renders a saved snapshot") {
  const fs::path dir = temp_dir("viz");
  write(dir / "cfg.txt", "base_population = 20\ngenerations = 10\n");
  REQUIRE(cli({"run", "--config", (dir / "cfg.txt").string(), "--out-dir",
               (dir / "out").string()}) == 0);
  REQUIRE(cli({"visualize", "--snapshot",
               (dir / "out" / "population_final.txt").string(), "--request",
               "10,20,30", "--out", (dir / "viz.ppm").string()}) == 0);
  const std::string ppm = slurp(dir / "viz.ppm");
  CHECK(ppm.rfind("P6\n", 0) == 0);
}
