// Copyright 2026 The evopop Authors
// SPDX-License-Identifier: Apache-2.0
#include "evopop/cli.hpp"

int main(int argc, char** argv) { return evopop::cli::run_cli(argc, argv); }
