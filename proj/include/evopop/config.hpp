// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "evopop/agent.hpp"
#include "evopop/experiment.hpp"

namespace evopop {

/// Parses the flat key=value experiment config format ('#' starts a comment;
/// blank lines ignored). Unknown keys are rejected by name. Values in `base`
/// stand in for keys the text does not mention.
experiment::ExperimentConfig parse_config_text(
    std::string_view text, const experiment::ExperimentConfig& base = {});

experiment::ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Canonical echo of a resolved config, itself valid config-file text. The
/// resolved request is written out explicitly, so re-running from the echo
/// reproduces the experiment bit-exactly.
std::string config_echo_text(const experiment::ExperimentConfig& config,
                             const Request& resolved_request);

/// FNV-1a over the canonical echo; stamped into population snapshots.
std::uint64_t config_hash(const experiment::ExperimentConfig& config,
                          const Request& resolved_request);

}  // namespace evopop
