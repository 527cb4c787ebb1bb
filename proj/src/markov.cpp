// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#include "evopop/markov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "evopop/errors.hpp"

namespace evopop::markov {
namespace {

std::vector<double> propagate_raw(const std::vector<double>& x,
                                  const StochasticMatrix& p) {
  const std::size_t n = p.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const double* row = p.row(i).data();
    for (std::size_t j = 0; j < n; ++j) out[j] += xi * row[j];
  }
  return out;
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

// Strongly connected components, iterative Tarjan. Returns component id per
// state; ids are assigned in reverse topological order, which we never rely on.
std::vector<std::size_t> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& adj, std::size_t* count_out) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), lowlink(n, 0), component(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0, components = 0;

  struct Frame {
    std::size_t v;
    std::size_t edge;
  };
  std::vector<Frame> call_stack;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call_stack.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const std::size_t v = frame.v;
      if (frame.edge < adj[v].size()) {
        const std::size_t w = adj[v][frame.edge++];
        if (index[w] == kUnset) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call_stack.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
      } else {
        if (lowlink[v] == index[v]) {
          std::size_t w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            component[w] = components;
          } while (w != v);
          ++components;
        }
        call_stack.pop_back();
        if (!call_stack.empty()) {
          const std::size_t parent = call_stack.back().v;
          lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
        }
      }
    }
  }
  *count_out = components;
  return component;
}

// Gaussian elimination with partial pivoting; a is row-major n x n, solved in
// place against b. Throws std::invalid_argument on a (near-)singular system.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b,
                                std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double cand = std::abs(a[r * n + col]);
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best < 1e-12) {
      throw std::invalid_argument(
          "invariant_distribution_direct: singular system; the chain has no "
          "unique invariant distribution");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
      std::swap(b[col], b[pivot]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r * n + col] * inv;
      if (factor == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[r * n + j] -= factor * a[col * n + j];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t ri = n; ri-- > 0;) {
    double acc = b[ri];
    for (std::size_t j = ri + 1; j < n; ++j) acc -= a[ri * n + j] * x[j];
    x[ri] = acc / a[ri * n + ri];
  }
  return x;
}

}  // namespace

Measure propagate(const Measure& lambda, const StochasticMatrix& p) {
  if (lambda.size() != p.size()) {
    throw std::invalid_argument("propagate: measure has " +
                                std::to_string(lambda.size()) +
                                " states, matrix has " +
                                std::to_string(p.size()));
  }
  std::vector<double> x(lambda.weights().begin(), lambda.weights().end());
  return Measure(propagate_raw(x, p));
}

StochasticMatrix n_step(const StochasticMatrix& p, std::uint64_t t) {
  StochasticMatrix result = StochasticMatrix::identity(p.size());
  if (t == 0) return result;
  StochasticMatrix base = p;
  bool have_result = false;
  while (t > 0) {
    if (t & 1) {
      result = have_result ? multiply(result, base) : base;
      have_result = true;
    }
    t >>= 1;
    if (t > 0) base = multiply(base, base);
  }
  return result;
}

double path_probability(const Measure& lambda, const StochasticMatrix& p,
                        std::span<const std::size_t> path) {
  if (path.empty()) {
    throw std::invalid_argument("path_probability: path must be non-empty");
  }
  if (lambda.size() != p.size()) {
    throw std::invalid_argument("path_probability: dimension mismatch");
  }
  for (std::size_t s : path) {
    if (s >= p.size()) {
      throw std::invalid_argument("path_probability: state index out of range");
    }
  }
  double prob = lambda[path[0]];
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    prob *= p(path[k], path[k + 1]);
  }
  return prob;
}

ChainClassification classify(const StochasticMatrix& p) {
  const std::size_t n = p.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (p(i, j) > 0.0) adj[i].push_back(j);
    }
  }

  std::size_t component_count = 0;
  const std::vector<std::size_t> component =
      strongly_connected_components(adj, &component_count);

  ChainClassification result;
  result.irreducible = component_count == 1;
  result.period_per_state.assign(n, 0);

  // Period per component: BFS levels from any member; the gcd of
  // level[u] + 1 - level[v] over intra-component edges u -> v is the gcd of
  // all cycle lengths in the component. A trivial component without a
  // self-loop has no cycles and keeps period 0.
  std::vector<std::int64_t> level(n, -1);
  std::vector<std::int64_t> component_period(component_count, 0);
  std::vector<bool> seeded(component_count, false);
  std::vector<std::size_t> queue;
  for (std::size_t root = 0; root < n; ++root) {
    const std::size_t c = component[root];
    if (seeded[c]) continue;
    seeded[c] = true;
    queue.clear();
    queue.push_back(root);
    level[root] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t u = queue[qi];
      for (std::size_t v : adj[u]) {
        if (component[v] != c) continue;
        if (level[v] < 0) {
          level[v] = level[u] + 1;
          queue.push_back(v);
        }
      }
    }
    std::int64_t g = 0;
    for (std::size_t u : queue) {
      for (std::size_t v : adj[u]) {
        if (component[v] != c) continue;
        g = std::gcd(g, level[u] + 1 - level[v]);
      }
    }
    component_period[c] = g;
  }
  for (std::size_t i = 0; i < n; ++i) {
    result.period_per_state[i] = component_period[component[i]];
  }
  result.aperiodic = std::all_of(result.period_per_state.begin(),
                                 result.period_per_state.end(),
                                 [](std::int64_t d) { return d == 1; });
  return result;
}

Measure invariant_distribution(const StochasticMatrix& p, double tol) {
  InvariantOptions options;
  options.tol = tol;
  return invariant_distribution(p, options);
}

Measure invariant_distribution(const StochasticMatrix& p,
                               const InvariantOptions& options) {
  if (options.tol <= 0.0) {
    throw std::invalid_argument("invariant_distribution: tol must be > 0");
  }
  const std::size_t n = p.size();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> next;
  double residual = 0.0;
  for (std::size_t iter = 0; iter <= options.max_iterations; ++iter) {
    next = propagate_raw(x, p);
    residual = l1_distance(next, x);
    if (residual <= options.tol) {
      // x itself satisfies ||x*P - x||_1 <= tol.
      Measure pi{std::move(x)};
      if (n <= options.direct_check_max_n && classify(p).irreducible) {
        const Measure direct = invariant_distribution_direct(p);
        if (2.0 * total_variation(pi, direct) > options.direct_check_tol) {
          throw ConvergenceError(
              "invariant_distribution: power iteration and direct solve "
              "disagree",
              {pi.weights().begin(), pi.weights().end()},
              2.0 * total_variation(pi, direct));
        }
      }
      return pi;
    }
    const double mass = std::accumulate(next.begin(), next.end(), 0.0);
    for (double& w : next) w /= mass;
    x.swap(next);
  }
  throw ConvergenceError(
      "invariant_distribution: no convergence within " +
          std::to_string(options.max_iterations) + " iterations",
      std::move(x), residual);
}

Measure invariant_distribution_direct(const StochasticMatrix& p) {
  const std::size_t n = p.size();
  // Solve (P^T - I) pi = 0 with the first equation replaced by sum(pi) = 1.
  std::vector<double> a(n * n, 0.0);
  std::vector<double> b(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) a[j] = 1.0;
  b[0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = p(j, i);
    a[i * n + i] -= 1.0;
  }
  std::vector<double> pi = solve_dense(std::move(a), std::move(b), n);
  for (double& w : pi) {
    if (w < 0.0) {
      if (w < -1e-9) {
        throw std::invalid_argument(
            "invariant_distribution_direct: negative solution; the chain has "
            "no unique invariant distribution");
      }
      w = 0.0;
    }
  }
  const double mass = std::accumulate(pi.begin(), pi.end(), 0.0);
  for (double& w : pi) w /= mass;
  return Measure(std::move(pi));
}

EquilibriumResult equilibrium_limit(const Measure& lambda,
                                    const StochasticMatrix& p, double tol,
                                    std::size_t horizon) {
  if (lambda.size() != p.size()) {
    throw std::invalid_argument("equilibrium_limit: dimension mismatch");
  }
  if (!lambda.is_distribution()) {
    throw std::invalid_argument(
        "equilibrium_limit: initial measure must be a distribution");
  }
  std::vector<double> x(lambda.weights().begin(), lambda.weights().end());
  double delta = 0.0;
  std::size_t consecutive = 0;
  for (std::size_t t = 1; t <= horizon; ++t) {
    std::vector<double> next = propagate_raw(x, p);
    delta = 0.5 * l1_distance(next, x);
    x.swap(next);
    consecutive = delta <= tol ? consecutive + 1 : 0;
    if (consecutive == 3) {
      return {Measure(std::move(x)), true, t, delta};
    }
  }
  return {Measure(std::move(x)), false, horizon, delta};
}

AgentConditional conditional_from_marginal(std::size_t agent_index,
                                           std::span<const std::size_t> dims,
                                           const StochasticMatrix& marginal) {
  if (agent_index >= dims.size()) {
    throw std::invalid_argument("conditional_from_marginal: bad agent index");
  }
  if (marginal.size() != dims[agent_index]) {
    throw std::invalid_argument(
        "conditional_from_marginal: marginal size does not match agent state "
        "count");
  }
  std::size_t joint = 1;
  for (std::size_t d : dims) joint *= d;
  // Stride of this agent's digit in the mixed-radix joint index
  // (agent 0 most significant).
  std::size_t stride = 1;
  for (std::size_t i = agent_index + 1; i < dims.size(); ++i) stride *= dims[i];

  AgentConditional cond;
  cond.agent_states = dims[agent_index];
  cond.table.resize(joint * cond.agent_states);
  for (std::size_t y = 0; y < joint; ++y) {
    const std::size_t own_state = (y / stride) % dims[agent_index];
    const auto row = marginal.row(own_state);
    std::copy(row.begin(), row.end(), cond.table.begin() + y * cond.agent_states);
  }
  return cond;
}

StochasticMatrix joint_transition(std::span<const AgentConditional> conditionals,
                                  std::size_t max_joint_states) {
  if (conditionals.empty()) {
    throw std::invalid_argument("joint_transition: no agents");
  }
  std::size_t joint = 1;
  for (const AgentConditional& c : conditionals) {
    if (c.agent_states == 0) {
      throw std::invalid_argument("joint_transition: agent with no states");
    }
    if (joint > max_joint_states / c.agent_states) {
      std::size_t full = 1;
      for (const AgentConditional& d : conditionals) full *= d.agent_states;
      throw std::invalid_argument(
          "joint_transition: joint state space has " + std::to_string(full) +
          " states, cap is " + std::to_string(max_joint_states));
    }
    joint *= c.agent_states;
  }
  const std::size_t n_agents = conditionals.size();
  for (std::size_t i = 0; i < n_agents; ++i) {
    const AgentConditional& c = conditionals[i];
    if (c.table.size() != joint * c.agent_states) {
      throw std::invalid_argument(
          "joint_transition: agent " + std::to_string(i) +
          " table must have one row per joint state");
    }
    for (std::size_t y = 0; y < joint; ++y) {
      double row_sum = 0.0;
      for (std::size_t s = 0; s < c.agent_states; ++s) {
        const double v = c.table[y * c.agent_states + s];
        if (!std::isfinite(v) || v < 0.0) {
          throw std::invalid_argument("joint_transition: agent " +
                                      std::to_string(i) +
                                      " has a negative conditional entry");
        }
        row_sum += v;
      }
      if (std::abs(row_sum - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "joint_transition: agent " + std::to_string(i) + " row " +
            std::to_string(y) + " is not a distribution");
      }
    }
  }

  // digits[x * n_agents + i] is agent i's scalar state inside joint state x.
  std::vector<std::size_t> digits(joint * n_agents);
  for (std::size_t x = 0; x < joint; ++x) {
    std::size_t rest = x;
    for (std::size_t i = n_agents; i-- > 0;) {
      digits[x * n_agents + i] = rest % conditionals[i].agent_states;
      rest /= conditionals[i].agent_states;
    }
  }

  std::vector<double> entries(joint * joint);
  for (std::size_t y = 0; y < joint; ++y) {
    for (std::size_t x = 0; x < joint; ++x) {
      double prob = 1.0;
      for (std::size_t i = 0; i < n_agents; ++i) {
        const AgentConditional& c = conditionals[i];
        prob *= c.table[y * c.agent_states + digits[x * n_agents + i]];
        if (prob == 0.0) break;
      }
      entries[y * joint + x] = prob;
    }
  }
  return StochasticMatrix(joint, std::move(entries), {}, 1e-10);
}

}  // namespace evopop::markov
