// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#include "evopop/macrostate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace evopop::macrostate {

MacroLabel MacroLabel::best_deviation(std::int64_t d) {
  if (d < 0) {
    throw std::invalid_argument("MacroLabel: deviation must be >= 0");
  }
  return MacroLabel(d);
}

std::int64_t MacroLabel::best_deviation() const {
  if (is_extinct()) {
    throw std::logic_error("MacroLabel: extinct label has no deviation");
  }
  return code_;
}

std::string MacroLabel::to_string() const {
  return is_extinct() ? "EXTINCT" : std::to_string(code_);
}

MacroLabel MacroLabel::from_string(const std::string& text) {
  if (text == "EXTINCT") return extinct();
  std::size_t used = 0;
  const long long value = std::stoll(text, &used);
  if (used != text.size()) {
    throw std::invalid_argument("MacroLabel: cannot parse '" + text + "'");
  }
  return best_deviation(value);
}

MacroLabel classify(const Population& population, const Request& request) {
  if (population.agents.empty()) return MacroLabel::extinct();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const Agent& agent : population.agents) {
    best = std::min(best, deviation(agent, request));
    if (best == 0) break;
  }
  return MacroLabel::best_deviation(best);
}

double MacroStateDistribution::probability(MacroLabel label) const {
  const auto it = probabilities.find(label);
  return it == probabilities.end() ? 0.0 : it->second;
}

void MacroStateDistribution::validate() const {
  double sum = 0.0;
  for (const auto& [label, p] : probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument(
          "MacroStateDistribution: probability outside [0,1] for label " +
          label.to_string());
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "MacroStateDistribution: probabilities sum to " + std::to_string(sum));
  }
}

MacroStateDistribution occupation_estimate(
    std::span<const GenerationLabel> labels) {
  if (labels.empty()) {
    throw std::invalid_argument("occupation_estimate: need at least one run");
  }
  MacroStateDistribution distribution;
  distribution.generation = labels.front().generation;
  std::map<MacroLabel, std::int64_t> counts;
  for (const GenerationLabel& gl : labels) {
    if (gl.generation != distribution.generation) {
      throw std::invalid_argument(
          "occupation_estimate: runs report different generations");
    }
    ++counts[gl.label];
  }
  const double n = static_cast<double>(labels.size());
  for (const auto& [label, count] : counts) {
    distribution.probabilities[label] = static_cast<double>(count) / n;
  }
  return distribution;
}

double total_variation(const MacroStateDistribution& a,
                       const MacroStateDistribution& b) {
  double l1 = 0.0;
  for (const auto& [label, p] : a.probabilities) {
    l1 += std::abs(p - b.probability(label));
  }
  for (const auto& [label, p] : b.probabilities) {
    if (!a.probabilities.contains(label)) l1 += p;
  }
  return 0.5 * l1;
}

std::int64_t label_universe_size(const MacroStateDistribution& distribution) {
  std::int64_t support = 0;
  for (const auto& [label, p] : distribution.probabilities) {
    if (p > 0.0) ++support;
  }
  return std::max<std::int64_t>(support, 2);
}

StabilityVerdict stability_verdict(
    std::span<const MacroStateDistribution> trajectory, std::size_t window,
    double tol) {
  if (window < 2 || trajectory.size() <= window) {
    throw std::invalid_argument(
        "stability_verdict: need trajectory longer than window, window >= 2");
  }
  StabilityVerdict verdict;
  verdict.limit = trajectory.back();

  double max_delta = 0.0;
  for (std::size_t i = trajectory.size() - window; i + 1 < trajectory.size();
       ++i) {
    max_delta = std::max(max_delta, total_variation(trajectory[i], trajectory[i + 1]));
  }
  verdict.max_tv_delta_tail = max_delta;
  verdict.converged = max_delta <= tol;

  // Spread of the final distribution over the label universe: zero-probability
  // labels count, so a unit mass is maximally non-uniform, not uniform.
  const std::int64_t universe = label_universe_size(verdict.limit);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  std::int64_t support = 0;
  for (const auto& [label, p] : verdict.limit.probabilities) {
    if (p <= 0.0) continue;
    lo = std::min(lo, p);
    hi = std::max(hi, p);
    ++support;
  }
  if (support < universe) lo = 0.0;
  verdict.nonuniform = (hi - lo) > tol;
  verdict.stable = verdict.converged && verdict.nonuniform;
  return verdict;
}

double degree_of_instability(const MacroStateDistribution& limit,
                             std::int64_t n_states) {
  if (n_states < 2) {
    throw std::invalid_argument(
        "degree_of_instability: label universe must have at least 2 states");
  }
  limit.validate();
  const double log_base = std::log(static_cast<double>(n_states));
  double entropy = 0.0;
  for (const auto& [label, p] : limit.probabilities) {
    if (p > 0.0) entropy -= p * std::log(p);
  }
  return std::max(0.0, entropy / log_base);
}

}  // namespace evopop::macrostate
