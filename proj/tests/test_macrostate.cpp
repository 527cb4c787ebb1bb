// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "evopop/macrostate.hpp"
#include "evopop/rng.hpp"

using namespace evopop;
using namespace evopop::macrostate;

namespace {

MacroStateDistribution make_distribution(
    std::int64_t generation, std::vector<std::pair<std::int64_t, double>> probs) {
  MacroStateDistribution d;
  d.generation = generation;
  for (const auto& [dev, p] : probs) {
    d.probabilities[MacroLabel::best_deviation(dev)] = p;
  }
  return d;
}

}  // namespace

TEST_CASE("macro labels") {
  const MacroLabel optimal = MacroLabel::best_deviation(0);
  CHECK_FALSE(optimal.is_extinct());
  CHECK(optimal.best_deviation() == 0);
  CHECK(optimal.to_string() == "0");
  CHECK(MacroLabel::from_string("0") == optimal);
  CHECK(MacroLabel::from_string("EXTINCT") == MacroLabel::extinct());
  CHECK(MacroLabel::extinct().to_string() == "EXTINCT");
  CHECK_THROWS_AS(MacroLabel::best_deviation(-3), std::invalid_argument);
  CHECK_THROWS_AS((void)MacroLabel::extinct().best_deviation(), std::logic_error);
}

TEST_CASE("population classification") {
  const Request request{{10, 20}};
  Population population;
  CHECK(classify(population, request) == MacroLabel::extinct());

  population.agents.push_back(Agent{{13, 25}});  // deviation 3 + 5 = 8
  CHECK(classify(population, request) == MacroLabel::best_deviation(8));

  // An agent at fitness one half: deviation exactly 1.
  population.agents.push_back(Agent{{10, 21}});
  CHECK(classify(population, request) == MacroLabel::best_deviation(1));

  population.agents.push_back(Agent{{10, 20, 77}});
  CHECK(classify(population, request) == MacroLabel::best_deviation(0));
}

TEST_CASE("classification is permutation invariant") {
  const Request request{{40, 60}};
  Population population;
  population.agents = {Agent{{41}}, Agent{{62, 39}}, Agent{{1, 2, 3}}};
  const MacroLabel label = classify(population, request);
  std::sort(population.agents.begin(), population.agents.end(),
            [](const Agent& a, const Agent& b) {
              return a.attributes > b.attributes;
            });
  CHECK(classify(population, request) == label);
}

TEST_CASE("occupation estimates count runs") {
  using GL = GenerationLabel;
  const std::vector<GL> all_optimal{
      {7, MacroLabel::best_deviation(0)},
      {7, MacroLabel::best_deviation(0)},
      {7, MacroLabel::best_deviation(0)}};
  const auto unit = occupation_estimate(all_optimal);
  CHECK(unit.generation == 7);
  CHECK(unit.probability(MacroLabel::best_deviation(0)) == 1.0);
  unit.validate();

  const std::vector<GL> mixed{{3, MacroLabel::best_deviation(0)},
                              {3, MacroLabel::best_deviation(0)},
                              {3, MacroLabel::best_deviation(1)},
                              {3, MacroLabel::best_deviation(3)}};
  const auto estimate = occupation_estimate(mixed);
  CHECK(estimate.probability(MacroLabel::best_deviation(0)) == 0.5);
  CHECK(estimate.probability(MacroLabel::best_deviation(1)) == 0.25);
  CHECK(estimate.probability(MacroLabel::best_deviation(3)) == 0.25);
  CHECK(estimate.probability(MacroLabel::best_deviation(2)) == 0.0);

  const std::vector<GL> single{{0, MacroLabel::extinct()}};
  CHECK(occupation_estimate(single).probability(MacroLabel::extinct()) == 1.0);

  const std::vector<GL> mismatched{{1, MacroLabel::best_deviation(0)},
                                   {2, MacroLabel::best_deviation(0)}};
  CHECK_THROWS_AS(occupation_estimate(mismatched), std::invalid_argument);
  CHECK_THROWS_AS(occupation_estimate({}), std::invalid_argument);
}

TEST_CASE("stability verdict on a constant unit-mass tail") {
  std::vector<MacroStateDistribution> trajectory;
  for (std::int64_t g = 0; g < 20; ++g) {
    trajectory.push_back(make_distribution(g, {{0, 1.0}}));
  }
  const auto verdict = stability_verdict(trajectory, 5, 1e-3);
  CHECK(verdict.converged);
  CHECK(verdict.nonuniform);
  CHECK(verdict.stable);
  CHECK(verdict.max_tv_delta_tail == 0.0);
  CHECK(verdict.limit.probability(MacroLabel::best_deviation(0)) == 1.0);
}

TEST_CASE("stability verdict detects oscillation") {
  std::vector<MacroStateDistribution> trajectory;
  for (std::int64_t g = 0; g < 20; ++g) {
    const double p = g % 2 == 0 ? 0.6 : 0.4;
    trajectory.push_back(make_distribution(g, {{0, p}, {1, 1.0 - p}}));
  }
  const auto verdict = stability_verdict(trajectory, 5, 1e-3);
  CHECK_FALSE(verdict.converged);
  CHECK(verdict.max_tv_delta_tail == doctest::Approx(0.2));
  CHECK_FALSE(verdict.stable);
}

TEST_CASE("stability verdict on an exactly uniform limit") {
  std::vector<MacroStateDistribution> trajectory;
  for (std::int64_t g = 0; g < 10; ++g) {
    trajectory.push_back(make_distribution(g, {{0, 0.5}, {1, 0.5}}));
  }
  const auto verdict = stability_verdict(trajectory, 4, 1e-3);
  CHECK(verdict.converged);
  CHECK_FALSE(verdict.nonuniform);
  CHECK_FALSE(verdict.stable);
}

TEST_CASE("stability verdict converges once the window is inside a constant tail") {
  std::vector<MacroStateDistribution> trajectory;
  for (std::int64_t g = 0; g < 6; ++g) {
    trajectory.push_back(make_distribution(g, {{g, 1.0}}));  // churning head
  }
  for (std::int64_t g = 6; g < 30; ++g) {
    trajectory.push_back(make_distribution(g, {{2, 0.75}, {5, 0.25}}));
  }
  const auto verdict = stability_verdict(trajectory, 10, 1e-9);
  CHECK(verdict.converged);
  CHECK(verdict.nonuniform);
}

TEST_CASE("stability verdict rejects short trajectories") {
  std::vector<MacroStateDistribution> trajectory(3);
  CHECK_THROWS_AS(stability_verdict(trajectory, 5, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(stability_verdict(trajectory, 1, 1e-3), std::invalid_argument);
}

TEST_CASE("degree of instability endpoints") {
  const auto unit = make_distribution(1000, {{0, 1.0}});
  CHECK(degree_of_instability(unit, 2) == 0.0);
  CHECK(degree_of_instability(unit, label_universe_size(unit)) == 0.0);

  for (std::int64_t n : {2, 3, 5, 8}) {
    MacroStateDistribution uniform;
    uniform.generation = 0;
    for (std::int64_t d = 0; d < n; ++d) {
      uniform.probabilities[MacroLabel::best_deviation(d)] =
          1.0 / static_cast<double>(n);
    }
    CHECK(degree_of_instability(uniform, n) == doctest::Approx(1.0));
  }

  // -2 * 0.5 * log4(0.5) = log4(2) = 0.5.
  const auto half = make_distribution(0, {{0, 0.5}, {1, 0.5}});
  CHECK(degree_of_instability(half, 4) == doctest::Approx(0.5));

  CHECK_THROWS_AS(degree_of_instability(unit, 1), std::invalid_argument);
  CHECK_THROWS_AS(degree_of_instability(unit, 0), std::invalid_argument);
}

TEST_CASE("instability is invariant under relabeling and Schur-concave") {
  Rng rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng.uniform_index(5);
    std::vector<double> probs(k);
    double total = 0.0;
    for (double& p : probs) {
      p = rng.uniform01() + 1e-3;
      total += p;
    }
    for (double& p : probs) p /= total;

    MacroStateDistribution d;
    MacroStateDistribution relabeled;
    for (std::size_t i = 0; i < k; ++i) {
      d.probabilities[MacroLabel::best_deviation(static_cast<std::int64_t>(i))] =
          probs[i];
      relabeled.probabilities[MacroLabel::best_deviation(
          static_cast<std::int64_t>(100 + 7 * i))] = probs[i];
    }
    const auto n = static_cast<std::int64_t>(k);
    const double delta = degree_of_instability(d, n);
    CHECK(delta >= 0.0);
    CHECK(delta <= 1.0);
    CHECK(degree_of_instability(relabeled, n) == doctest::Approx(delta));

    // Moving mass from a larger to a smaller probability cannot decrease
    // the entropy.
    auto hi = std::max_element(
        d.probabilities.begin(), d.probabilities.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    auto lo = std::min_element(
        d.probabilities.begin(), d.probabilities.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    const double shift = 0.25 * (hi->second - lo->second);
    hi->second -= shift;
    lo->second += shift;
    CHECK(degree_of_instability(d, n) >= delta - 1e-12);
  }
}

TEST_CASE("instability stays below one for non-uniform limits") {
  Rng rng(555);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng.uniform_index(4);
    std::vector<double> probs(k);
    double total = 0.0;
    for (double& p : probs) {
      p = rng.uniform01() + 1e-3;
      total += p;
    }
    for (double& p : probs) p /= total;
    const double spread =
        *std::max_element(probs.begin(), probs.end()) -
        *std::min_element(probs.begin(), probs.end());
    if (spread < 1e-6) continue;

    MacroStateDistribution d;
    for (std::size_t i = 0; i < k; ++i) {
      d.probabilities[MacroLabel::best_deviation(static_cast<std::int64_t>(i))] =
          probs[i];
    }
    CHECK(degree_of_instability(d, static_cast<std::int64_t>(k)) < 1.0);
  }
}

TEST_CASE("total variation over distributions with different supports") {
  const auto a = make_distribution(0, {{0, 0.5}, {1, 0.5}});
  const auto b = make_distribution(0, {{0, 0.5}, {2, 0.5}});
  CHECK(total_variation(a, b) == doctest::Approx(0.5));
  CHECK(total_variation(a, a) == 0.0);
}
