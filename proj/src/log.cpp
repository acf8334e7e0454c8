#include "kronrod/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace kronrod {

LogLevel log_threshold() noexcept {
  static const LogLevel level = [] {
    const char* env = std::getenv("KRONROD_LOG");
    const std::string v = env ? env : "";
    if (v == "error") return LogLevel::error;
    if (v == "info") return LogLevel::info;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::warn;
  }();
  return level;
}

void log_message(LogLevel level, std::string_view message) {
  if (level > log_threshold()) return;
  static std::mutex mu;
  static constexpr const char* names[] = {"error", "warn", "info", "debug"};
  std::lock_guard lock(mu);
  std::cerr << '[' << names[static_cast<int>(level)] << "] " << message << '\n';
}

}  // namespace kronrod
