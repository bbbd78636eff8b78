//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "srgw/cli.hpp"

int main(int argc, char **argv) { return srgw::cli::run_command(argc, argv); }
