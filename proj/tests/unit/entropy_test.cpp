#include <cmath>

#include "doctest.h"
#include "entkit/entropy.hpp"
#include "entkit/errors.hpp"
#include "support/oracles.hpp"

using namespace entkit;

namespace {

SymbolString from_text(std::string_view text) {
  return SymbolString::parse_with_inferred_alphabet(text);
}

std::vector<int> symbols_of(const SymbolString& s) {
  std::vector<int> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.alphabet().symbol(s[i]));
  return out;
}

}  // namespace

TEST_CASE("order-0 entropy of aab matches the closed form") {
  // (2*log2(3/2) + log2(3)) / 3
  const double expected = (2.0 * std::log2(1.5) + std::log2(3.0)) / 3.0;
  CHECK(empirical_entropy_k(from_text("aab"), 0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.9182958340544896).epsilon(1e-12));
}

TEST_CASE("fair binary string has exactly one bit per symbol") {
  CHECK(empirical_entropy_k(from_text("10101010"), 0) == 1.0);
  CHECK(empirical_entropy_k(from_text("0011"), 0) == 1.0);
}

TEST_CASE("constant string has zero entropy at every order") {
  SymbolString s = from_text("aaaaaaaa");
  for (unsigned k = 0; k <= 3; ++k) {
    CHECK(empirical_entropy_k(s, k) == 0.0);
  }
}

TEST_CASE("alternating string is deterministic at order 1") {
  SymbolString s = from_text("10101010");
  CHECK(empirical_entropy_k(s, 1) == 0.0);

  ContextStats stats = context_stats(s, 1);
  REQUIRE(stats.tables.size() == 2);
  // Context "1" is followed four times (by "0" each time); context "0" only
  // three times because its final occurrence ends the string.
  const auto one = static_cast<std::uint16_t>(*s.alphabet().index_of('1'));
  const auto zero = static_cast<std::uint16_t>(*s.alphabet().index_of('0'));
  const CountTable& after_one = stats.tables.at(std::vector<std::uint16_t>{one});
  CHECK(after_one.total() == 4);
  CHECK(after_one.successor_counts.at(zero) == 4);
  const CountTable& after_zero = stats.tables.at(std::vector<std::uint16_t>{zero});
  CHECK(after_zero.total() == 3);
  CHECK(after_zero.successor_counts.at(one) == 3);
  CHECK(stats.total_followed == 7);
}

TEST_CASE("order equal to the length is defined as zero") {
  CHECK(empirical_entropy_k(from_text("ab"), 2) == 0.0);
}

TEST_CASE("entropy profile runs from zero to k_max") {
  auto profile = entropy_profile(from_text("ab"), 2);
  REQUIRE(profile.size() == 3);
  CHECK(profile[0] == std::pair<unsigned, double>{0, 1.0});
  CHECK(profile[1] == std::pair<unsigned, double>{1, 0.0});
  CHECK(profile[2] == std::pair<unsigned, double>{2, 0.0});
}

TEST_CASE("errors: empty string and oversized order") {
  CHECK_THROWS_AS(empirical_entropy_k(from_text(""), 0), EmptyStringError);
  CHECK_THROWS_AS(empirical_entropy_k(from_text("ab"), 3), OrderTooLargeError);
}

TEST_CASE("entropy stays within [0, log2 |A|]") {
  oracle::SplitMix64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t sigma = 2 + rng.below(3);
    std::string text;
    const std::size_t n = 1 + rng.below(80);
    for (std::size_t i = 0; i < n; ++i) {
      text.push_back(static_cast<char>('a' + rng.below(sigma)));
    }
    SymbolString s = from_text(text);
    const double bound = std::log2(static_cast<double>(s.alphabet().size()));
    for (unsigned k = 0; k <= 3 && k <= s.size(); ++k) {
      const double h = empirical_entropy_k(s, k);
      CHECK(h >= 0.0);
      CHECK(h <= bound + 1e-12);
    }
  }
}

TEST_CASE("entropy is nonincreasing in k for periodic strings") {
  std::string text;
  for (int i = 0; i < 32; ++i) text += "abc";
  SymbolString s = from_text(text);
  double prev = empirical_entropy_k(s, 0);
  for (unsigned k = 1; k <= 3; ++k) {
    const double h = empirical_entropy_k(s, k);
    CHECK(h <= prev + 1e-12);
    prev = h;
  }
  CHECK(empirical_entropy_k(s, 1) == 0.0);
}

TEST_CASE("agrees with the successor-string oracle on random inputs") {
  oracle::SplitMix64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t sigma = 1 + rng.below(4);
    const std::size_t n = 1 + rng.below(64);
    std::string text;
    for (std::size_t i = 0; i < n; ++i) {
      text.push_back(static_cast<char>('a' + rng.below(sigma)));
    }
    SymbolString s = from_text(text);
    std::vector<int> raw = symbols_of(s);
    for (unsigned k = 0; k <= 3 && k <= n; ++k) {
      const double expected = oracle::hk_bits_per_symbol(raw, k, s.alphabet().symbols());
      const double actual = empirical_entropy_k(s, k);
      CHECK(std::abs(actual - expected) <= 1e-12);
    }
  }
}
