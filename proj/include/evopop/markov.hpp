// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evopop/measure.hpp"
#include "evopop/stochastic_matrix.hpp"

namespace evopop::markov {

/// One propagation step: returns lambda * P, i.e. result_j = sum_i lambda_i * p_ij.
/// Mass is preserved, so a distribution stays a distribution.
Measure propagate(const Measure& lambda, const StochasticMatrix& p);

/// t-step transition matrix P^t (P^0 is the identity). Computed by repeated
/// squaring; rows stay stochastic within 1e-10.
StochasticMatrix n_step(const StochasticMatrix& p, std::uint64_t t);

/// Probability of observing the exact state sequence `path`, starting from
/// initial measure lambda: lambda[path[0]] * prod p(path[k] -> path[k+1]).
double path_probability(const Measure& lambda, const StochasticMatrix& p,
                        std::span<const std::size_t> path);

/// Structural classification of the chain's transition graph.
/// period_per_state[i] is the gcd of the lengths of all cycles through state
/// i; 0 means no cycle returns to i (such a state is not aperiodic).
struct ChainClassification {
  bool irreducible = false;
  bool aperiodic = false;
  std::vector<std::int64_t> period_per_state;
};

ChainClassification classify(const StochasticMatrix& p);

struct InvariantOptions {
  double tol = 1e-12;
  std::size_t max_iterations = 1'000'000;
  /// Up to this size, a converged power iteration on an irreducible chain is
  /// cross-checked against the dense direct solve.
  std::size_t direct_check_max_n = 64;
  double direct_check_tol = 1e-8;
};

/// Invariant distribution pi with ||pi*P - pi||_1 <= tol, found by power
/// iteration from the uniform distribution. Throws ConvergenceError (carrying
/// the last iterate and residual) if the iteration cap is hit, e.g. for
/// periodic chains whose uniform start is not already invariant.
Measure invariant_distribution(const StochasticMatrix& p, double tol = 1e-12);
Measure invariant_distribution(const StochasticMatrix& p,
                               const InvariantOptions& options);

/// Dense direct solve of pi*P = pi, sum(pi) = 1. Well-posed only when the
/// invariant distribution is unique (single recurrent class); otherwise
/// throws std::invalid_argument.
Measure invariant_distribution_direct(const StochasticMatrix& p);

struct EquilibriumResult {
  Measure limit;
  bool converged = false;
  std::size_t steps = 0;
  double last_delta = 0.0;
};

/// Follows lambda * P^t until the total-variation distance between successive
/// iterates stays <= tol for 3 consecutive steps, or `horizon` steps elapse.
/// Non-convergence is reported through the flag, not an error.
EquilibriumResult equilibrium_limit(const Measure& lambda,
                                    const StochasticMatrix& p, double tol,
                                    std::size_t horizon);

/// Per-agent conditional next-state table: one row per joint state of the
/// whole system, one column per scalar state of this agent; rows sum to 1.
struct AgentConditional {
  std::size_t agent_states = 0;
  std::vector<double> table;  // row-major, joint_count x agent_states
};

/// Builds the conditional for agent `agent_index` of a system with scalar
/// state counts `dims`, where the agent follows `marginal` on its own state
/// and ignores everyone else.
AgentConditional conditional_from_marginal(std::size_t agent_index,
                                           std::span<const std::size_t> dims,
                                           const StochasticMatrix& marginal);

/// Joint transition matrix over the product state space. Joint states are
/// mixed-radix numbers with agent 0 as the most significant digit, so for
/// conditionals that ignore the joint state this is exactly the Kronecker
/// product of the marginals. The probability of a joint move Y -> X is the
/// product of the per-agent conditionals. Joint spaces larger than
/// `max_joint_states` are rejected with a size report.
StochasticMatrix joint_transition(std::span<const AgentConditional> conditionals,
                                  std::size_t max_joint_states = 4096);

}  // namespace evopop::markov
