// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#include "evopop/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "evopop/errors.hpp"

namespace evopop::io {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) {
    // tolerate padding blanks and trailing \r
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos
                         ? std::string()
                         : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text) {
  double out = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("csv: cannot parse number '" + text + "'");
  }
  return out;
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

template <typename Fn>
void with_output_file(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path.string());
  fn(out);
  out.flush();
  if (!out) throw IoError("write failed", path.string());
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open", path.string());
  return in;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void save_matrix_csv(const StochasticMatrix& matrix, std::ostream& out) {
  const std::size_t n = matrix.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) out << ',';
    out << (matrix.labels().empty() ? "s" + std::to_string(j)
                                    : matrix.labels()[j]);
  }
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) out << ',';
      out << format_double(matrix(i, j));
    }
    out << '\n';
  }
}

void save_matrix_csv(const StochasticMatrix& matrix,
                     const std::filesystem::path& path) {
  with_output_file(path, [&](std::ostream& out) { save_matrix_csv(matrix, out); });
}

StochasticMatrix load_matrix_csv(std::istream& in) {
  const auto rows = read_csv(in);
  if (rows.size() < 2) {
    throw std::invalid_argument("matrix csv: need a header row and n rows");
  }
  const std::vector<std::string> labels = rows.front();
  const std::size_t n = labels.size();
  if (rows.size() != n + 1) {
    throw std::invalid_argument("matrix csv: expected " + std::to_string(n) +
                                " data rows, got " +
                                std::to_string(rows.size() - 1));
  }
  std::vector<double> entries;
  entries.reserve(n * n);
  for (std::size_t i = 1; i <= n; ++i) {
    if (rows[i].size() != n) {
      throw std::invalid_argument("matrix csv: row " + std::to_string(i) +
                                  " has " + std::to_string(rows[i].size()) +
                                  " fields, expected " + std::to_string(n));
    }
    for (const std::string& field : rows[i]) {
      entries.push_back(parse_double(field));
    }
  }
  return StochasticMatrix(n, std::move(entries), labels);
}

StochasticMatrix load_matrix_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_matrix_csv(in);
}

void save_measure_csv(const Measure& measure,
                      std::span<const std::string> labels, std::ostream& out) {
  for (std::size_t j = 0; j < measure.size(); ++j) {
    if (j > 0) out << ',';
    out << (labels.empty() ? "s" + std::to_string(j) : labels[j]);
  }
  out << '\n';
  for (std::size_t j = 0; j < measure.size(); ++j) {
    if (j > 0) out << ',';
    out << format_double(measure[j]);
  }
  out << '\n';
}

Measure load_measure_csv(std::istream& in) {
  const auto rows = read_csv(in);
  if (rows.size() != 2) {
    throw std::invalid_argument("measure csv: need a header row and one row");
  }
  if (rows[1].size() != rows[0].size()) {
    throw std::invalid_argument("measure csv: field count mismatch");
  }
  std::vector<double> weights;
  weights.reserve(rows[1].size());
  for (const std::string& field : rows[1]) {
    weights.push_back(parse_double(field));
  }
  return Measure(std::move(weights));
}

Measure load_measure_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_measure_csv(in);
}

void write_fitness_csv(const experiment::RunTrajectory& trajectory,
                       std::ostream& out) {
  out << "generation,max_fitness,mean_fitness,population_size\n";
  for (std::size_t g = 0; g < trajectory.generations.size(); ++g) {
    const experiment::GenerationStats& stats = trajectory.generations[g];
    out << g << ',' << format_double(stats.max_fitness) << ','
        << format_double(stats.mean_fitness) << ',' << stats.population_size
        << '\n';
  }
}

void write_macro_trajectory_csv(
    std::span<const macrostate::MacroStateDistribution> trajectory,
    std::ostream& out) {
  out << "generation,label,probability\n";
  for (const macrostate::MacroStateDistribution& distribution : trajectory) {
    for (const auto& [label, p] : distribution.probabilities) {
      out << distribution.generation << ',' << label.to_string() << ','
          << format_double(p) << '\n';
    }
  }
}

void write_sweep_csv(const experiment::SweepResult& result, std::ostream& out) {
  out << "mutation_rate,crossover_rate,delta,runs,N\n";
  for (const experiment::SweepCell& cell : result.cells) {
    out << format_double(cell.mutation_rate) << ','
        << format_double(cell.crossover_rate) << ','
        << format_double(cell.delta) << ',' << cell.runs << ',' << cell.n_labels
        << '\n';
  }
}

void write_population_snapshot(const Population& population,
                               std::uint64_t config_hash, std::ostream& out) {
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(config_hash));
  out << "# generation=" << population.generation << " config_hash=" << hex
      << '\n';
  for (const Agent& agent : population.agents) {
    for (std::size_t i = 0; i < agent.attributes.size(); ++i) {
      if (i > 0) out << ',';
      out << agent.attributes[i];
    }
    out << '\n';
  }
}

void write_population_snapshot(const Population& population,
                               std::uint64_t config_hash,
                               const std::filesystem::path& path) {
  with_output_file(path, [&](std::ostream& out) {
    write_population_snapshot(population, config_hash, out);
  });
}

Population load_population_snapshot(std::istream& in,
                                    std::uint64_t* config_hash) {
  Population population;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# generation=", 0) != 0) {
    throw std::invalid_argument(
        "snapshot: missing '# generation=... config_hash=...' header");
  }
  std::stringstream header(line.substr(1));
  std::string token;
  while (header >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "generation") {
      population.generation = std::stoll(value);
    } else if (key == "config_hash" && config_hash != nullptr) {
      *config_hash = std::stoull(value, nullptr, 16);
    }
  }
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    Agent agent;
    for (const std::string& field : split_csv_line(line)) {
      agent.attributes.push_back(static_cast<int>(std::stol(field)));
    }
    population.agents.push_back(std::move(agent));
  }
  return population;
}

Population load_population_snapshot(const std::filesystem::path& path,
                                    std::uint64_t* config_hash) {
  auto in = open_input(path);
  return load_population_snapshot(in, config_hash);
}

}  // namespace evopop::io
