#pragma once

#include <bit>
#include <cstdint>

namespace entkit {

// Number of bits needed to write one of v distinct values, v >= 1.
// ceil_log2(1) == 0.
inline unsigned ceil_log2(std::uint64_t v) {
  if (v <= 1) return 0;
  return static_cast<unsigned>(64 - std::countl_zero(v - 1));
}

// Codeword length of k >= 1 under the Elias gamma code: 2*floor(log2 k) + 1.
inline unsigned elias_gamma_length(std::uint64_t k) {
  unsigned floor_log2 = static_cast<unsigned>(63 - std::countl_zero(k));
  return 2 * floor_log2 + 1;
}

}  // namespace entkit
