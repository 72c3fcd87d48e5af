#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entkit/alphabet.hpp"

namespace entkit {

// Identifies one candidate model family.
struct FamilyTag {
  enum class Kind { Bernoulli, Markov, Singleton, UniformBaseline };

  Kind kind = Kind::Bernoulli;
  unsigned order = 0;  // Markov context length, >= 1; unused otherwise

  static FamilyTag bernoulli() { return {Kind::Bernoulli, 0}; }
  static FamilyTag markov(unsigned k) { return {Kind::Markov, k}; }
  static FamilyTag singleton() { return {Kind::Singleton, 0}; }
  static FamilyTag uniform_baseline() { return {Kind::UniformBaseline, 0}; }

  // Tie-break order used by selection: bernoulli, then markov by ascending
  // order, then singleton, then uniform.
  std::pair<int, unsigned> complexity_rank() const noexcept;

  // Stable text form: "bernoulli", "markov-3", "singleton", "uniform".
  std::string name() const;

  friend bool operator==(const FamilyTag& a, const FamilyTag& b) {
    return a.kind == b.kind && a.order == b.order;
  }
};

// Parses the text form produced by FamilyTag::name().
std::optional<FamilyTag> parse_family(std::string_view text);

// A concrete probability assignment over strings of a fixed length,
// together with its description cost.
//
// For maximum-likelihood fits, entropy_bits and nll_bits are computed by one
// formula and are identical; they may differ for synthetic models whose
// parameters were not estimated from the scored string.
struct FittedModel {
  FamilyTag family;
  Alphabet alphabet;
  std::uint64_t length = 0;  // n: the model scores strings of exactly this length

  std::vector<double> symbol_probs;  // Bernoulli: one probability per symbol
  std::map<std::vector<std::uint16_t>, std::vector<double>> transition_probs;  // Markov
  std::vector<std::uint16_t> literal;  // Markov: first k symbols; Singleton: the whole string

  double alpha_bits = 0.0;    // explicit description cost of the model itself
  double entropy_bits = 0.0;  // entropy term paired with alpha in the two-part cost
  double nll_bits = 0.0;      // -log2 P(fitted string), excluding any literal prefix

  double gap_bits() const;
  double two_part_bits() const { return alpha_bits + entropy_bits; }

  // -log2 of the probability this model assigns to y; +infinity when
  // P(y) == 0. Throws LengthMismatchError unless y.size() == length.
  double neg_log2_prob(const SymbolString& y) const;

  // Same, over raw alphabet indices (no alphabet check); used by
  // exhaustive enumeration.
  double neg_log2_prob(std::span<const std::uint16_t> indices) const;
};

// Maximum-likelihood fit of one family to x. Requires x nonempty; Markov
// order must satisfy k < n.
FittedModel fit(const SymbolString& x, FamilyTag family);

// Synthetic models with given parameters, for typicality experiments.
FittedModel make_bernoulli_model(Alphabet alphabet, std::vector<double> probs, std::uint64_t n);
FittedModel make_uniform_model(Alphabet alphabet, std::uint64_t n);

// Description cost of the model under the fixed reference encoding:
//   2-bit family tag;
//   Markov order in Elias gamma;
//   each free count in ceil(log2(n+1)) bits (bernoulli: |A|-1 counts;
//   markov: |A|-1 per realized context plus the context identity at
//   k*log2|A| bits each);
//   literal symbols at ceil(log2|A|) bits each (markov prefix of length k,
//   singleton the whole string).
// Fractional values arise only from context identities over alphabets whose
// size is not a power of two.
double model_codelength(const FittedModel& model);

struct ScoredCandidate {
  FittedModel model;
  double gap_bits = 0.0;
  double two_part_bits = 0.0;
  bool kept = false;  // survived the typicality-gap stage
};

struct SelectionResult {
  FittedModel winner;
  double two_part_bits = 0.0;
  double typicality_gap_bits = 0.0;
  std::vector<ScoredCandidate> candidates;
};

// Two-stage minimum-description selection among fitted candidates:
// keep candidates whose |entropy - nll| gap is within epsilon * n of the
// smallest gap, then pick the smallest alpha + entropy. Ties break toward
// the simpler family, then toward smaller alpha. The result does not depend
// on the order of `families`.
SelectionResult select_model(const SymbolString& x, const std::vector<FamilyTag>& families,
                             double epsilon);

// How a pair of strings is rendered as one string for joint modeling.
enum class PairMode {
  Separator,  // x | sep | y over the separator-extended alphabet
  Plain,      // plain concatenation xy
};

SymbolString pair_string(const SymbolString& x, const SymbolString& y, PairMode mode);

// Joint selection over the pair string. Both strings must share one
// alphabet; with PairMode::Separator the pair is always nonempty, so empty
// x and y are allowed.
SelectionResult select_model_joint(const SymbolString& x, const SymbolString& y,
                                   const std::vector<FamilyTag>& families, double epsilon,
                                   PairMode mode = PairMode::Separator);

// Independence control for joint selection: each string modeled separately,
// costs added. Offered for comparison against the concatenated joint cost.
struct ProductControl {
  SelectionResult x_selection;
  SelectionResult y_selection;
  double two_part_bits = 0.0;
};

ProductControl product_control(const SymbolString& x, const SymbolString& y,
                               const std::vector<FamilyTag>& families, double epsilon);

}  // namespace entkit
