// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>

#include "evopop/agent.hpp"
#include "evopop/evolution.hpp"

namespace evopop::io {

/// Renders a population as a binary PPM (P6): one row per agent, one cell per
/// attribute, grayscale scaled over [attr_lo, attr_hi] (low = dark, high =
/// light). Rows are sorted by descending raw fitness, then lexicographically,
/// so identical agents group together. Rows shorter than the widest agent are
/// padded with a blue filler that no attribute shade can take.
void visualize_population(const Population& population, const Request& request,
                          std::ostream& out, int attr_lo = 1, int attr_hi = 100);

void visualize_population(const Population& population, const Request& request,
                          const std::filesystem::path& path, int attr_lo = 1,
                          int attr_hi = 100);

}  // namespace evopop::io
