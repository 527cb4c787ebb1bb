// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
//
// Times the OpenMP ensemble loop against the serial reference on the same
// workload and verifies they produce identical occupation estimates.
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "evopop/experiment.hpp"

namespace {

using Clock = std::chrono::steady_clock;
using evopop::experiment::ExecutionPolicy;
using evopop::experiment::ExperimentConfig;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main() {
  ExperimentConfig config;
  config.runs = 64;
  config.generations = 250;
  config.master_seed = 7;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("workload: %lld runs x %lld generations\n",
              static_cast<long long>(config.runs),
              static_cast<long long>(config.generations));

  auto start = Clock::now();
  const auto serial = run_ensemble(config, ExecutionPolicy::kSerial);
  const double t_serial = seconds_since(start);

  start = Clock::now();
  const auto parallel = run_ensemble(config, ExecutionPolicy::kParallel);
  const double t_parallel = seconds_since(start);

  bool identical = serial.size() == parallel.size();
  for (std::size_t g = 0; identical && g < serial.size(); ++g) {
    identical = serial[g].probabilities == parallel[g].probabilities;
  }

  std::printf("serial:   %8.3f s\n", t_serial);
  std::printf("parallel: %8.3f s\n", t_parallel);
  std::printf("speedup:  %8.2fx\n", t_serial / t_parallel);
  std::printf("results identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
