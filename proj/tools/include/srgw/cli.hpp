//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srgw::cli {

enum ExitCode : int { Ok = 0, ValidationError = 1, SolverError = 2 };

/// Runs one subcommand. `args` excludes the program name. Usage and errors go
/// to `err`, summaries to `out`.
int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

int run_command(int argc, const char *const *argv);

}  // namespace srgw::cli
