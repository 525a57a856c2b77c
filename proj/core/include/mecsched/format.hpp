#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace mecsched {

// Shortest decimal text that parses back to the same double.
inline std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

// Fixed number of significant digits, for human-facing lines.
inline std::string format_general(double value, int precision) {
  char buffer[64];
  auto [end, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, precision);
  return std::string(buffer, end);
}

}  // namespace mecsched
