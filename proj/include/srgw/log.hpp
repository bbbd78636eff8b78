//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <memory>

#include <spdlog/spdlog.h>

namespace srgw {

/// Library logger writing to stderr. Its level comes from SRGW_LOG
/// (error | warn | info | debug), defaulting to warn.
spdlog::logger &log();

/// Re-reads SRGW_LOG; used by the CLI after it has parsed its own flags.
void configure_logging_from_env();

}  // namespace srgw
