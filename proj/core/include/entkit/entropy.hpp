#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "entkit/alphabet.hpp"

namespace entkit {

// Successor counts observed after one length-k context.
struct CountTable {
  std::vector<std::uint16_t> context;         // alphabet indices, length k
  std::vector<std::uint64_t> successor_counts; // one slot per alphabet symbol

  // Number of occurrences of the context that are followed by a symbol.
  std::uint64_t total() const noexcept;
};

// All realized length-k contexts of a string with their successor counts.
//
// Position i (k < i <= n, 1-based) contributes one (context, successor)
// pair, so a context occurrence that ends the string has no successor and
// is not counted. total_followed == n - k.
struct ContextStats {
  unsigned order = 0;
  std::map<std::vector<std::uint16_t>, CountTable> tables;
  std::uint64_t total_followed = 0;
};

ContextStats context_stats(const SymbolString& x, unsigned k);

// Total entropy of a count vector in bits: sum over c > 0 of
// c * log2(total / c). Zero counts contribute zero.
double count_entropy_bits(std::span<const std::uint64_t> counts);

// Per-symbol zeroth-order entropy of a count vector.
double count_entropy_per_symbol(std::span<const std::uint64_t> counts);

// k-th order empirical entropy of x in bits per symbol.
//
// Order 0 is the plain frequency entropy; order k > 0 averages the
// zeroth-order entropy of each context's successor string, weighted by the
// number of followed occurrences, and divides by n. Defined as 0 when no
// position has a full context (n == k). Throws EmptyStringError when x is
// empty and OrderTooLargeError when k > n.
double empirical_entropy_k(const SymbolString& x, unsigned k);

// (k, H_k) for k = 0..k_max.
std::vector<std::pair<unsigned, double>> entropy_profile(const SymbolString& x, unsigned k_max);

}  // namespace entkit
