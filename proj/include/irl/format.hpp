#pragma once

#include <charconv>
#include <string>

namespace irl {

/// Shortest decimal text that reads back to exactly `x`.
inline std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

}  // namespace irl
