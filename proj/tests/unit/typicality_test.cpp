#include <cmath>
#include <string>

#include "doctest.h"
#include "entkit/errors.hpp"
#include "entkit/typicality.hpp"
#include "support/oracles.hpp"

using namespace entkit;

namespace {

SymbolString from_text(std::string_view text) {
  return SymbolString::parse_with_inferred_alphabet(text);
}

SymbolString binary(std::string_view text) {
  static const Alphabet bin({'0', '1'});
  return SymbolString::parse(text, bin);
}

}  // namespace

TEST_CASE("every string is typical under a fair coin") {
  Alphabet bin({'0', '1'});
  FittedModel coin = make_bernoulli_model(bin, {0.5, 0.5}, 8);
  CHECK(is_typical(coin, binary("00000000"), 0.0));
  CHECK(is_typical(coin, binary("01101001"), 0.0));
  CHECK(is_typical(coin, binary("11111111"), 0.0));
}

TEST_CASE("a point mass is typical only at its own string") {
  SymbolString x = binary("0101");
  FittedModel point = fit(x, FamilyTag::singleton());
  CHECK(is_typical(point, x, 0.0));
  CHECK(!is_typical(point, binary("0100"), 0.5));
  CHECK_THROWS_AS(is_typical(point, binary("01"), 0.1), LengthMismatchError);
}

TEST_CASE("the all-zeros string fails the 0.1 band under a 0.3-coin") {
  // gap = |12 h(0.3) - 12 log2(1/0.7)| = |10.575 - 6.174| = 4.40 bits,
  // far beyond eps*n = 1.2 bits.
  Alphabet bin({'0', '1'});
  FittedModel biased = make_bernoulli_model(bin, {0.7, 0.3}, 12);
  const double h = -(0.3 * std::log2(0.3) + 0.7 * std::log2(0.7));
  const double gap = std::abs(12.0 * h - 12.0 * std::log2(1.0 / 0.7));
  CHECK(gap > 1.2);
  CHECK(!is_typical(biased, binary("000000000000"), 0.1));
  // A string at the composition mode sits inside the band.
  CHECK(is_typical(biased, binary("001000100001"), 0.1));
}

TEST_CASE("fair-coin enumeration saturates the whole cube") {
  Alphabet bin({'0', '1'});
  FittedModel coin = make_bernoulli_model(bin, {0.5, 0.5}, 10);
  TypicalSetReport r = typical_set_report(coin, 0.1);
  CHECK(r.enumerated == 1024);
  CHECK(r.bits.typical_count == 1024);
  CHECK(r.base_sigma.typical_count == 1024);
  CHECK(r.probability_sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.bits.typical_probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.bits.lower_holds);
  CHECK(r.bits.upper_holds);

  // With eps = 0 the upper bound is met with equality: |S| = 2^H = 2^n.
  TypicalSetReport tight = typical_set_report(coin, 0.0);
  CHECK(tight.bits.typical_count == 1024);
  CHECK(tight.bits.cardinality_upper == doctest::Approx(1024.0).epsilon(1e-9));
  CHECK(tight.bits.upper_holds);
}

TEST_CASE("a singleton's typical set is exactly itself") {
  FittedModel point = fit(binary("010101"), FamilyTag::singleton());
  TypicalSetReport r = typical_set_report(point, 0.25);
  CHECK(r.enumerated == 64);
  CHECK(r.bits.typical_count == 1);
  CHECK(r.bits.typical_probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.probability_sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("biased-coin census matches a direct re-count") {
  Alphabet bin({'0', '1'});
  FittedModel biased = make_bernoulli_model(bin, {0.7, 0.3}, 12);
  TypicalSetReport r = typical_set_report(biased, 0.2);
  CHECK(r.enumerated == 4096);
  CHECK(r.probability_sum == doctest::Approx(1.0).epsilon(1e-9));

  // Re-count over compositions: strings with j ones share one probability.
  const double h12 = 12.0 * -(0.3 * std::log2(0.3) + 0.7 * std::log2(0.7));
  std::uint64_t expect_count = 0;
  double expect_mass = 0.0;
  for (int j = 0; j <= 12; ++j) {
    const double nll = -(12.0 - j) * std::log2(0.7) - j * std::log2(0.3);
    if (std::abs(h12 - nll) <= 0.2 * 12.0) {
      const double binom = oracle::binomial_pmf(12, j, 0.3);
      expect_count += static_cast<std::uint64_t>(std::llround(
          binom / (std::pow(0.3, j) * std::pow(0.7, 12 - j))));
      expect_mass += binom;
    }
  }
  CHECK(r.bits.typical_count == expect_count);
  CHECK(r.bits.typical_probability == doctest::Approx(expect_mass).epsilon(1e-9));
}

TEST_CASE("unit conventions coincide on binary alphabets") {
  Alphabet bin({'0', '1'});
  FittedModel biased = make_bernoulli_model(bin, {0.6, 0.4}, 10);
  TypicalSetReport r = typical_set_report(biased, 0.15);
  CHECK(r.bits.typical_count == r.base_sigma.typical_count);
  CHECK(r.bits.gap_tolerance_bits == doctest::Approx(r.base_sigma.gap_tolerance_bits));
  CHECK(r.bits.cardinality_upper == doctest::Approx(r.base_sigma.cardinality_upper));
}

TEST_CASE("unit conventions differ on wider alphabets") {
  Alphabet abc({'a', 'b', 'c'});
  FittedModel m = make_bernoulli_model(abc, {0.5, 0.3, 0.2}, 6);
  TypicalSetReport r = typical_set_report(m, 0.1);
  // Base-3 tolerance is log2(3) times wider in bit units.
  CHECK(r.base_sigma.gap_tolerance_bits ==
        doctest::Approx(r.bits.gap_tolerance_bits * std::log2(3.0)).epsilon(1e-12));
  CHECK(r.base_sigma.typical_count >= r.bits.typical_count);
}

TEST_CASE("enumeration of a unary alphabet degenerates gracefully") {
  Alphabet a({'a'});
  FittedModel m = make_bernoulli_model(a, {1.0}, 5);
  TypicalSetReport r = typical_set_report(m, 0.1);
  CHECK(r.enumerated == 1);
  CHECK(r.bits.typical_count == 1);
  CHECK(r.base_sigma.typical_count == 1);
  CHECK(r.probability_sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the enumeration cap is enforced") {
  Alphabet bin({'0', '1'});
  FittedModel coin = make_bernoulli_model(bin, {0.5, 0.5}, 30);
  CHECK_THROWS_AS(typical_set_report(coin, 0.1), EnumerationTooLargeError);
  CHECK_THROWS_AS(atypical_mass_by_enumeration(coin, 0.1), EnumerationTooLargeError);
}

TEST_CASE("fair coins have zero atypical mass at every length") {
  auto curve = bernoulli_atypical_mass_curve({0.5, 0.5}, {4, 16, 64, 256}, 0.05);
  REQUIRE(curve.size() == 4);
  for (const MassPoint& point : curve) {
    CHECK(point.atypical_mass == 0.0);
    CHECK(point.typical_mass == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("closed-form atypical mass matches the binomial oracle") {
  for (std::uint64_t n : {8ull, 12ull, 16ull}) {
    auto curve = bernoulli_atypical_mass_curve({0.7, 0.3}, {n}, 0.2);
    const double expected = oracle::binomial_atypical_mass(n, 0.3, 0.2);
    CHECK(curve[0].atypical_mass == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("closed-form and enumeration agree exactly at desk scale") {
  Alphabet bin({'0', '1'});
  for (std::uint64_t n : {8ull, 12ull}) {
    FittedModel biased = make_bernoulli_model(bin, {0.7, 0.3}, n);
    const double enumerated = atypical_mass_by_enumeration(biased, 0.2);
    auto curve = bernoulli_atypical_mass_curve({0.7, 0.3}, {n}, 0.2);
    CHECK(std::abs(enumerated - curve[0].atypical_mass) <= 1e-9);
  }
}

TEST_CASE("atypical mass becomes small at the largest tested length") {
  auto curve = bernoulli_atypical_mass_curve({0.7, 0.3}, {8, 64, 512, 2048}, 0.2);
  CHECK(curve.back().atypical_mass < 0.2);
  CHECK(curve.back().atypical_mass < curve.front().atypical_mass);
}

TEST_CASE("the closed form extends beyond binary alphabets") {
  auto curve = bernoulli_atypical_mass_curve({0.5, 0.25, 0.25}, {9}, 0.15);
  Alphabet abc({'a', 'b', 'c'});
  FittedModel m = make_bernoulli_model(abc, {0.5, 0.25, 0.25}, 9);
  const double enumerated = atypical_mass_by_enumeration(m, 0.15);
  CHECK(curve[0].atypical_mass == doctest::Approx(enumerated).epsilon(1e-9));
}

TEST_CASE("probability arguments are validated") {
  CHECK_THROWS_AS(bernoulli_atypical_mass_curve({0.5, 0.6}, {4}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(bernoulli_atypical_mass_curve({}, {4}, 0.1), std::invalid_argument);
}
