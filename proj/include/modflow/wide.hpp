#pragma once

#include <algorithm>
#include <string>

namespace modflow {

/// Exact counter for quantities bounded by n^3 (triangle counts).
using wide_uint = unsigned __int128;

inline std::string to_string(wide_uint x) {
  if (x == 0) return "0";
  std::string s;
  while (x > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace modflow
