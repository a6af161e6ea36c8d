#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

namespace geoloc {

// Verbosity from the GEOLOC_LOG environment variable: quiet | info | debug.
enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

inline LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("GEOLOC_LOG");
    if (!env) return LogLevel::Info;
    std::string v(env);
    if (v == "quiet" || v == "0") return LogLevel::Quiet;
    if (v == "debug" || v == "2") return LogLevel::Debug;
    return LogLevel::Info;
  }();
  return level;
}

inline void log_warn(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::cerr << "warning: " << msg << '\n';
}

inline void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::cerr << msg << '\n';
}

inline void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::Debug) std::cerr << msg << '\n';
}

}  // namespace geoloc
