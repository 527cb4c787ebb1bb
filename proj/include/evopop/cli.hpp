// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace evopop::cli {

/// Full command-line front end. Returns the process exit status:
/// 0 on success, 1 on validation errors, 2 on I/O errors.
int run_cli(int argc, const char* const* argv);

}  // namespace evopop::cli
