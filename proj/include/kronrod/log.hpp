#pragma once

#include <string_view>

namespace kronrod {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

// Threshold read once from KRONROD_LOG (error|warn|info|debug, default warn).
LogLevel log_threshold() noexcept;

void log_message(LogLevel level, std::string_view message);

}  // namespace kronrod
