// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#include "evopop/ppm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "evopop/errors.hpp"

namespace evopop::io {

void visualize_population(const Population& population, const Request& request,
                          std::ostream& out, int attr_lo, int attr_hi) {
  if (population.agents.empty()) {
    throw std::invalid_argument("visualize_population: empty population");
  }
  if (attr_lo > attr_hi) {
    throw std::invalid_argument("visualize_population: bad attribute range");
  }

  std::vector<std::size_t> order(population.agents.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::int64_t> deviations(population.agents.size());
  for (std::size_t i = 0; i < deviations.size(); ++i) {
    deviations[i] = deviation(population.agents[i], request);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (deviations[a] != deviations[b]) return deviations[a] < deviations[b];
    return population.agents[a].attributes < population.agents[b].attributes;
  });

  std::size_t width = 0;
  for (const Agent& agent : population.agents) {
    width = std::max(width, agent.attributes.size());
  }
  const std::size_t height = population.agents.size();

  out << "P6\n" << width << ' ' << height << "\n255\n";
  const double span = attr_hi > attr_lo ? attr_hi - attr_lo : 1.0;
  constexpr unsigned char kPad[3] = {40, 70, 160};
  std::vector<unsigned char> row(width * 3);
  for (std::size_t r = 0; r < height; ++r) {
    const Agent& agent = population.agents[order[r]];
    for (std::size_t c = 0; c < width; ++c) {
      if (c < agent.attributes.size()) {
        const double t = (agent.attributes[c] - attr_lo) / span;
        const auto gray = static_cast<unsigned char>(
            std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
        row[3 * c] = row[3 * c + 1] = row[3 * c + 2] = gray;
      } else {
        row[3 * c] = kPad[0];
        row[3 * c + 1] = kPad[1];
        row[3 * c + 2] = kPad[2];
      }
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
}

void visualize_population(const Population& population, const Request& request,
                          const std::filesystem::path& path, int attr_lo,
                          int attr_hi) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path.string());
  visualize_population(population, request, out, attr_lo, attr_hi);
  out.flush();
  if (!out) throw IoError("write failed", path.string());
}

}  // namespace evopop::io
