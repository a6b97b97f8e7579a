#pragma once

// Test-only reference implementations, kept independent of the library code.

#include <cmath>
#include <string>
#include <string_view>

namespace oracle {

// Exhaustive-history LZ76 parsing by direct substring search. A phrase
// starting at i is the shortest s[i, i+L) that does not occur inside
// s[0, i+L-1); a fragment that runs off the end still counts as a phrase.
inline int lz76(std::string_view s) {
  int phrases = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t len = 1;
    while (i + len <= s.size() &&
           s.substr(0, i + len - 1).find(s.substr(i, len)) != std::string_view::npos)
      ++len;
    ++phrases;
    i += len;
  }
  return phrases;
}

inline double c_lz(const std::string& s) {
  const double log_n = std::log2(static_cast<double>(s.size()));
  if (s.find('1') == std::string::npos || s.find('0') == std::string::npos) return log_n;
  const std::string rev(s.rbegin(), s.rend());
  return log_n * (lz76(s) + lz76(rev)) / 2.0;
}

inline std::string bits_of(unsigned long long v, int len) {
  std::string out(static_cast<std::size_t>(len), '0');
  for (int k = 0; k < len; ++k)
    if ((v >> (len - 1 - k)) & 1u) out[static_cast<std::size_t>(k)] = '1';
  return out;
}

}  // namespace oracle
