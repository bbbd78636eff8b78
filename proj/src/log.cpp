//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "srgw/log.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_color_sinks.h>

namespace srgw {

namespace {

spdlog::level::level_enum level_from_env() {
  const char *env = std::getenv("SRGW_LOG");
  if (env == nullptr)
    return spdlog::level::warn;
  const std::string_view v(env);
  if (v == "error")
    return spdlog::level::err;
  if (v == "info")
    return spdlog::level::info;
  if (v == "debug")
    return spdlog::level::debug;
  return spdlog::level::warn;
}

std::shared_ptr<spdlog::logger> make_logger() {
  auto logger = spdlog::stderr_color_mt("srgw");
  logger->set_pattern("[%l] %v");
  logger->set_level(level_from_env());
  return logger;
}

}  // namespace

spdlog::logger &log() {
  static std::shared_ptr<spdlog::logger> logger = make_logger();
  return *logger;
}

void configure_logging_from_env() { log().set_level(level_from_env()); }

}  // namespace srgw
