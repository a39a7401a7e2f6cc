#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace wingwrap {

/// FNV-1a 64-bit. Fast, dependency-free, and stable across platforms —
/// exactly enough for config hashes and output-file checksums (these detect
/// drift between runs; they are not cryptographic).
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string fnv1a64_hex(std::string_view data) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(data);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace wingwrap
