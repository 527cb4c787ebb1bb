// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "evopop/agent.hpp"
#include "evopop/evolution.hpp"

namespace evopop::macrostate {

/// Macro-state of a population: the best (minimum) deviation any of its
/// agents achieves against the request, or Extinct for an empty population.
/// Best deviation 0 is the optimal class (some agent matches the request
/// exactly), 1 the half-fitness class, and so on.
class MacroLabel {
 public:
  static constexpr MacroLabel extinct() { return MacroLabel(kExtinctCode); }
  static MacroLabel best_deviation(std::int64_t d);

  bool is_extinct() const { return code_ == kExtinctCode; }
  /// Only defined for non-extinct labels.
  std::int64_t best_deviation() const;

  auto operator<=>(const MacroLabel&) const = default;

  std::string to_string() const;
  static MacroLabel from_string(const std::string& text);

 private:
  static constexpr std::int64_t kExtinctCode = -1;
  constexpr explicit MacroLabel(std::int64_t code) : code_(code) {}
  std::int64_t code_;
};

/// EXTINCT for an empty population, otherwise the minimum deviation over all
/// agents.
MacroLabel classify(const Population& population, const Request& request);

/// One run's macro-state at a given generation.
struct GenerationLabel {
  std::int64_t generation = 0;
  MacroLabel label = MacroLabel::extinct();
};

/// Empirical occupation probabilities over macro-states at one generation.
struct MacroStateDistribution {
  std::int64_t generation = 0;
  std::map<MacroLabel, double> probabilities;

  /// 0 for labels outside the support.
  double probability(MacroLabel label) const;
  /// Probabilities must be in [0,1] and sum to 1 within 1e-9.
  void validate() const;
};

/// Fraction of runs in each macro-state. All snapshots must come from the
/// same generation; at least one is required.
MacroStateDistribution occupation_estimate(std::span<const GenerationLabel> labels);

/// Total-variation distance over the union of both supports.
double total_variation(const MacroStateDistribution& a,
                       const MacroStateDistribution& b);

/// Support size of the distribution, floored at 2. This is the label universe
/// N that normalizes the instability entropy; the floor keeps a unit-mass
/// limit meaningful (its entropy is 0 for any base).
std::int64_t label_universe_size(const MacroStateDistribution& distribution);

struct StabilityVerdict {
  bool converged = false;
  bool nonuniform = false;
  bool stable = false;  // converged && nonuniform
  MacroStateDistribution limit;
  double max_tv_delta_tail = 0.0;
};

/// Decides stability from a trajectory of occupation distributions:
/// converged iff every consecutive total-variation step over the final
/// `window` distributions is <= tol; nonuniform iff the final distribution's
/// probabilities (padded with zeros up to the label universe) spread by more
/// than tol. Requires trajectory.size() > window >= 2.
StabilityVerdict stability_verdict(std::span<const MacroStateDistribution> trajectory,
                                   std::size_t window, double tol);

/// Normalized entropy of a limit distribution over a universe of `n_states`
/// labels: -sum p * log_N(p), zero terms skipped. 0 iff unit mass, 1 for the
/// uniform distribution over the full universe. Requires n_states >= 2.
double degree_of_instability(const MacroStateDistribution& limit,
                             std::int64_t n_states);

}  // namespace evopop::macrostate
