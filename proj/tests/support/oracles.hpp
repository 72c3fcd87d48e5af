#pragma once

// Independent reference implementations used to pin expected values in
// tests. These deliberately share no code with the library: entropies are
// computed from materialized successor strings, probabilities from direct
// binomial sums, and random data from a self-contained generator.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

// splitmix64: small deterministic generator with identical output on every
// platform, so frozen expectations stay valid.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Zeroth-order entropy of a symbol sequence in bits per symbol, from the
// definition: sum over occurring symbols of (n_i / n) log2(n / n_i).
inline double h0_bits_per_symbol(const std::vector<int>& s) {
  if (s.empty()) return 0.0;
  std::vector<int> distinct;
  std::vector<std::uint64_t> counts;
  for (int v : s) {
    bool found = false;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      if (distinct[i] == v) {
        ++counts[i];
        found = true;
        break;
      }
    }
    if (!found) {
      distinct.push_back(v);
      counts.push_back(1);
    }
  }
  const double n = static_cast<double>(s.size());
  double h = 0.0;
  for (std::uint64_t c : counts) {
    h += (static_cast<double>(c) / n) * std::log2(n / static_cast<double>(c));
  }
  return h;
}

// k-th order empirical entropy by materializing, for every word w of length
// k over the alphabet, the string of symbols that follow occurrences of w.
// A trailing occurrence has no follower and contributes nothing.
inline double hk_bits_per_symbol(const std::vector<int>& s, unsigned k,
                                 const std::vector<int>& alphabet) {
  if (k == 0) return h0_bits_per_symbol(s);
  const std::size_t n = s.size();
  double total_bits = 0.0;

  std::vector<std::size_t> word(k, 0);
  for (;;) {
    std::vector<int> successors;
    for (std::size_t i = 0; i + k < n + 1; ++i) {
      bool match = true;
      for (unsigned j = 0; j < k; ++j) {
        if (s[i + j] != alphabet[word[j]]) {
          match = false;
          break;
        }
      }
      if (match && i + k < n) successors.push_back(s[i + k]);
    }
    total_bits +=
        static_cast<double>(successors.size()) * h0_bits_per_symbol(successors);

    std::size_t pos = k;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++word[pos] < alphabet.size()) {
        done = false;
        break;
      }
      word[pos] = 0;
    }
    if (done) break;
  }
  return total_bits / static_cast<double>(n);
}

inline double binomial_pmf(std::uint64_t n, std::uint64_t j, double p) {
  const double log_coeff = std::lgamma(static_cast<double>(n) + 1.0) -
                           std::lgamma(static_cast<double>(j) + 1.0) -
                           std::lgamma(static_cast<double>(n - j) + 1.0);
  const double log_prob = log_coeff + static_cast<double>(j) * std::log(p) +
                          static_cast<double>(n - j) * std::log(1.0 - p);
  return std::exp(log_prob);
}

// P(y not typical) for a binary Bernoulli(p) model of length n: the string
// probability depends only on the count of ones, so the mass is a sum of
// binomial tails.
inline double binomial_atypical_mass(std::uint64_t n, double p, double epsilon) {
  const double h = -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
  const double entropy_bits = static_cast<double>(n) * h;
  double mass = 0.0;
  for (std::uint64_t j = 0; j <= n; ++j) {
    const double nll = -(static_cast<double>(j) * std::log2(p) +
                         static_cast<double>(n - j) * std::log2(1.0 - p));
    if (std::abs(entropy_bits - nll) > epsilon * static_cast<double>(n)) {
      mass += binomial_pmf(n, j, p);
    }
  }
  return mass;
}

}  // namespace oracle
