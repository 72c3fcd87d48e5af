#pragma once

#include <cstdint>
#include <vector>

#include "entkit/models.hpp"

namespace entkit {

// Default ceiling on |A|^n for exhaustive enumeration.
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

// Membership in the typical set of `model` at tolerance epsilon:
//   |entropy_bits - (-log2 P(y))| <= epsilon * n,
// measured in bits. P(y) == 0 is never typical. Throws LengthMismatchError
// unless y.size() == model.length.
bool is_typical(const FittedModel& model, const SymbolString& y, double epsilon);

// One evaluation of the typical set under a fixed log base for the gap and
// the cardinality bounds.
struct TypicalSetView {
  double gap_tolerance_bits = 0.0;  // epsilon * n converted to bits
  std::uint64_t typical_count = 0;
  double typical_probability = 0.0;
  double cardinality_lower = 0.0;  // (1 - eps) * base^(H - eps*n)
  double cardinality_upper = 0.0;  // base^(H + eps*n)
  bool lower_holds = false;
  bool upper_holds = false;
};

// Exhaustive census of the typical set, reported under both unit
// conventions: `bits` measures the gap and the bounds in base 2; `base_sigma`
// measures both in base |A| (for a binary alphabet the two coincide; for a
// unary alphabet base_sigma degenerates and mirrors bits).
struct TypicalSetReport {
  FamilyTag family;
  std::uint64_t n = 0;
  std::uint64_t alphabet_size = 0;
  double epsilon = 0.0;
  double entropy_bits = 0.0;
  std::uint64_t enumerated = 0;
  double probability_sum = 0.0;  // sanity: sums to 1 within 1e-9 for proper models
  TypicalSetView bits;
  TypicalSetView base_sigma;
};

// Enumerates all |A|^n strings. Throws EnumerationTooLargeError when
// |A|^n exceeds `cap`.
TypicalSetReport typical_set_report(const FittedModel& model, double epsilon,
                                    std::uint64_t cap = kDefaultEnumerationCap);

struct MassPoint {
  std::uint64_t n = 0;
  double atypical_mass = 0.0;
  double typical_mass = 0.0;
};

// P(y not typical) under a Bernoulli model with the given symbol
// probabilities, for each n. Computed in closed form by summing over count
// vectors (binomial tails in the binary case), so n is not limited by the
// enumeration cap. The gap is measured in bits.
std::vector<MassPoint> bernoulli_atypical_mass_curve(const std::vector<double>& probs,
                                                     const std::vector<std::uint64_t>& lengths,
                                                     double epsilon);

// Same quantity by exhaustive enumeration, for cross-checking and for
// non-Bernoulli models. Subject to the enumeration cap.
double atypical_mass_by_enumeration(const FittedModel& model, double epsilon,
                                    std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace entkit
