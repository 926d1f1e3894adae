#pragma once

#include <charconv>
#include <string>

namespace hgmrf::detail {

// Shortest decimal that round-trips to the same double; keeps text output
// deterministic and diff-friendly.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace hgmrf::detail
