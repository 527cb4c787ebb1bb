// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#include "evopop/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "evopop/errors.hpp"

namespace evopop {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("config: cannot parse value '" + value +
                                "' for key '" + key + "'");
  }
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& value) {
  std::vector<T> out;
  if (trim(value).empty()) return out;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    out.push_back(parse_number<T>(key, trim(item)));
  }
  return out;
}

void append_double(std::string& out, double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

}  // namespace

experiment::ExperimentConfig parse_config_text(
    std::string_view text, const experiment::ExperimentConfig& base) {
  experiment::ExperimentConfig config = base;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " is not of the form key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "mutation_rate") {
      config.params.mutation_rate = parse_number<double>(key, value);
    } else if (key == "crossover_rate") {
      config.params.crossover_rate = parse_number<double>(key, value);
    } else if (key == "base_population") {
      config.params.base_population = parse_number<std::int64_t>(key, value);
    } else if (key == "init_attr_min") {
      config.params.init_attr_min = parse_number<int>(key, value);
    } else if (key == "init_attr_max") {
      config.params.init_attr_max = parse_number<int>(key, value);
    } else if (key == "attr_lo") {
      config.params.attr_lo = parse_number<int>(key, value);
    } else if (key == "attr_hi") {
      config.params.attr_hi = parse_number<int>(key, value);
    } else if (key == "parsimony_strength") {
      config.params.parsimony_strength = parse_number<double>(key, value);
    } else if (key == "size_min") {
      config.params.size_min = parse_number<std::int64_t>(key, value);
    } else if (key == "size_max") {
      config.params.size_max = parse_number<std::int64_t>(key, value);
    } else if (key == "generations") {
      config.generations = parse_number<std::int64_t>(key, value);
    } else if (key == "runs") {
      config.runs = parse_number<std::int64_t>(key, value);
    } else if (key == "master_seed") {
      config.master_seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "request_seed") {
      config.request_seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "request_length") {
      config.request_length = parse_number<std::int64_t>(key, value);
    } else if (key == "request") {
      config.request = parse_list<int>(key, value);
    } else if (key == "checkpoints") {
      config.checkpoints = parse_list<std::int64_t>(key, value);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return config;
}

experiment::ExperimentConfig load_config_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("config: cannot open", path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string config_echo_text(const experiment::ExperimentConfig& config,
                             const Request& resolved_request) {
  std::string out;
  auto kv = [&out](std::string_view key, auto value) {
    out.append(key);
    out.append(" = ");
    if constexpr (std::is_floating_point_v<decltype(value)>) {
      append_double(out, value);
    } else {
      out.append(std::to_string(value));
    }
    out.push_back('\n');
  };
  auto kv_list = [&out](std::string_view key, const auto& values) {
    out.append(key);
    out.append(" = ");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) out.push_back(',');
      out.append(std::to_string(values[i]));
    }
    out.push_back('\n');
  };
  kv("mutation_rate", config.params.mutation_rate);
  kv("crossover_rate", config.params.crossover_rate);
  kv("base_population", config.params.base_population);
  kv("init_attr_min", config.params.init_attr_min);
  kv("init_attr_max", config.params.init_attr_max);
  kv("attr_lo", config.params.attr_lo);
  kv("attr_hi", config.params.attr_hi);
  kv("parsimony_strength", config.params.parsimony_strength);
  kv("size_min", config.params.size_min);
  kv("size_max", config.params.size_max);
  kv("generations", config.generations);
  kv("runs", config.runs);
  kv("master_seed", config.master_seed);
  kv("request_seed", config.request_seed);
  kv("request_length", config.request_length);
  kv_list("request", resolved_request.required);
  kv_list("checkpoints", config.checkpoints);
  return out;
}

std::uint64_t config_hash(const experiment::ExperimentConfig& config,
                          const Request& resolved_request) {
  const std::string echo = config_echo_text(config, resolved_request);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char byte : echo) {
    hash ^= byte;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace evopop
