#pragma once

#include <charconv>
#include <string>

namespace trotter {

/// 17 significant digits, independent of the global locale.
inline std::string format_double(double value) {
  char buf[64];
  const auto result =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, result.ptr);
}

}  // namespace trotter
