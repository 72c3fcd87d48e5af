#include "entkit/entropy.hpp"

#include <cmath>

#include "entkit/errors.hpp"

namespace entkit {

std::uint64_t CountTable::total() const noexcept {
  std::uint64_t sum = 0;
  for (std::uint64_t c : successor_counts) sum += c;
  return sum;
}

ContextStats context_stats(const SymbolString& x, unsigned k) {
  const std::size_t n = x.size();
  if (n == 0) throw EmptyStringError();
  if (k > n) throw OrderTooLargeError(k, n);

  ContextStats stats;
  stats.order = k;
  stats.total_followed = n - k;

  const std::size_t sigma = x.alphabet().size();
  std::vector<std::uint16_t> context(k);
  for (std::size_t i = k; i < n; ++i) {
    for (unsigned j = 0; j < k; ++j) context[j] = x[i - k + j];
    auto [it, inserted] = stats.tables.try_emplace(context);
    if (inserted) {
      it->second.context = context;
      it->second.successor_counts.assign(sigma, 0);
    }
    ++it->second.successor_counts[x[i]];
  }
  return stats;
}

double count_entropy_bits(std::span<const std::uint64_t> counts) {
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  if (total == 0) return 0.0;
  double bits = 0.0;
  for (std::uint64_t c : counts) {
    if (c == 0) continue;
    bits += static_cast<double>(c) *
            std::log2(static_cast<double>(total) / static_cast<double>(c));
  }
  return bits;
}

double count_entropy_per_symbol(std::span<const std::uint64_t> counts) {
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  if (total == 0) return 0.0;
  return count_entropy_bits(counts) / static_cast<double>(total);
}

double empirical_entropy_k(const SymbolString& x, unsigned k) {
  ContextStats stats = context_stats(x, k);
  if (stats.total_followed == 0) return 0.0;
  double bits = 0.0;
  for (const auto& [context, table] : stats.tables) {
    bits += count_entropy_bits(table.successor_counts);
  }
  return bits / static_cast<double>(x.size());
}

std::vector<std::pair<unsigned, double>> entropy_profile(const SymbolString& x, unsigned k_max) {
  std::vector<std::pair<unsigned, double>> profile;
  profile.reserve(k_max + 1);
  for (unsigned k = 0; k <= k_max; ++k) {
    profile.emplace_back(k, empirical_entropy_k(x, k));
  }
  return profile;
}

}  // namespace entkit
