// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace evopop {

/// SplitMix64 output function. Bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives the seed for stream `stream` of a master seed. Streams seeded this
/// way are independent of execution order, which is what makes parallel
/// ensembles reproduce bit-identically: each run owns Rng(mix_seed(master, k)).
std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t stream);

/// mt19937_64 with portable sampling on top. The standard pins the engine's
/// output sequence but not std::uniform_*_distribution, so bounded draws are
/// done here (masked rejection) to keep results identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0,1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Uniform index in [0, n); n must be positive.
  std::size_t uniform_index(std::size_t n);

 private:
  std::uint64_t bounded(std::uint64_t n);  // unbiased draw in [0, n)

  std::mt19937_64 engine_;
};

}  // namespace evopop
