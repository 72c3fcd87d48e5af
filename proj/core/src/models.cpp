#include "entkit/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "entkit/bitmath.hpp"
#include "entkit/entropy.hpp"
#include "entkit/errors.hpp"

namespace entkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_same_alphabet(const Alphabet& a, const Alphabet& b) {
  if (!(a == b)) {
    throw std::invalid_argument("model and string must share one alphabet");
  }
}

}  // namespace

std::pair<int, unsigned> FamilyTag::complexity_rank() const noexcept {
  switch (kind) {
    case Kind::Bernoulli:
      return {0, 0};
    case Kind::Markov:
      return {1, order};
    case Kind::Singleton:
      return {2, 0};
    case Kind::UniformBaseline:
      return {3, 0};
  }
  return {4, 0};
}

std::string FamilyTag::name() const {
  switch (kind) {
    case Kind::Bernoulli:
      return "bernoulli";
    case Kind::Markov:
      return "markov-" + std::to_string(order);
    case Kind::Singleton:
      return "singleton";
    case Kind::UniformBaseline:
      return "uniform";
  }
  return "unknown";
}

std::optional<FamilyTag> parse_family(std::string_view text) {
  if (text == "bernoulli") return FamilyTag::bernoulli();
  if (text == "singleton") return FamilyTag::singleton();
  if (text == "uniform") return FamilyTag::uniform_baseline();
  constexpr std::string_view prefix = "markov-";
  if (text.size() > prefix.size() && text.substr(0, prefix.size()) == prefix) {
    unsigned order = 0;
    for (char c : text.substr(prefix.size())) {
      if (c < '0' || c > '9') return std::nullopt;
      order = order * 10 + static_cast<unsigned>(c - '0');
      if (order > 64) return std::nullopt;
    }
    if (order == 0) return std::nullopt;
    return FamilyTag::markov(order);
  }
  return std::nullopt;
}

double FittedModel::gap_bits() const { return std::abs(entropy_bits - nll_bits); }

double FittedModel::neg_log2_prob(const SymbolString& y) const {
  check_same_alphabet(alphabet, y.alphabet());
  if (y.size() != length) {
    throw LengthMismatchError(y.size(), length);
  }
  return neg_log2_prob(std::span<const std::uint16_t>(y.indices()));
}

double FittedModel::neg_log2_prob(std::span<const std::uint16_t> y) const {
  switch (family.kind) {
    case FamilyTag::Kind::Bernoulli: {
      double bits = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        double p = symbol_probs[y[i]];
        if (p <= 0.0) return kInf;
        bits -= std::log2(p);
      }
      return bits;
    }
    case FamilyTag::Kind::Markov: {
      const unsigned k = family.order;
      for (unsigned i = 0; i < k; ++i) {
        if (y[i] != literal[i]) return kInf;
      }
      double bits = 0.0;
      std::vector<std::uint16_t> context(k);
      for (std::size_t i = k; i < y.size(); ++i) {
        for (unsigned j = 0; j < k; ++j) context[j] = y[i - k + j];
        auto it = transition_probs.find(context);
        if (it == transition_probs.end()) return kInf;
        double p = it->second[y[i]];
        if (p <= 0.0) return kInf;
        bits -= std::log2(p);
      }
      return bits;
    }
    case FamilyTag::Kind::Singleton:
      return std::equal(y.begin(), y.end(), literal.begin(), literal.end()) ? 0.0 : kInf;
    case FamilyTag::Kind::UniformBaseline:
      return static_cast<double>(length) * std::log2(static_cast<double>(alphabet.size()));
  }
  return kInf;
}

double model_codelength(const FittedModel& model) {
  const double tag_bits = 2.0;
  const std::uint64_t n = model.length;
  const std::uint64_t sigma = model.alphabet.size();
  const double count_bits = static_cast<double>(ceil_log2(n + 1));
  const double literal_symbol_bits = static_cast<double>(ceil_log2(sigma));

  switch (model.family.kind) {
    case FamilyTag::Kind::Bernoulli:
      return tag_bits + static_cast<double>(sigma - 1) * count_bits;
    case FamilyTag::Kind::Markov: {
      const unsigned k = model.family.order;
      const double context_id_bits =
          static_cast<double>(k) * std::log2(static_cast<double>(sigma));
      const double per_context = context_id_bits + static_cast<double>(sigma - 1) * count_bits;
      return tag_bits + static_cast<double>(elias_gamma_length(k)) +
             static_cast<double>(model.transition_probs.size()) * per_context +
             static_cast<double>(k) * literal_symbol_bits;
    }
    case FamilyTag::Kind::Singleton:
      return tag_bits + static_cast<double>(n) * literal_symbol_bits;
    case FamilyTag::Kind::UniformBaseline:
      return tag_bits;
  }
  return tag_bits;
}

FittedModel fit(const SymbolString& x, FamilyTag family) {
  const std::size_t n = x.size();
  if (n == 0) throw EmptyStringError();

  FittedModel model;
  model.family = family;
  model.alphabet = x.alphabet();
  model.length = n;

  switch (family.kind) {
    case FamilyTag::Kind::Bernoulli: {
      std::vector<std::uint64_t> counts(x.alphabet().size(), 0);
      for (std::size_t i = 0; i < n; ++i) ++counts[x[i]];
      model.symbol_probs.resize(counts.size());
      for (std::size_t s = 0; s < counts.size(); ++s) {
        model.symbol_probs[s] = static_cast<double>(counts[s]) / static_cast<double>(n);
      }
      model.entropy_bits = count_entropy_bits(counts);
      model.nll_bits = model.entropy_bits;
      break;
    }
    case FamilyTag::Kind::Markov: {
      const unsigned k = family.order;
      if (k == 0) throw std::invalid_argument("markov order must be >= 1");
      if (k >= n) throw OrderTooLargeError(k, n);
      ContextStats stats = context_stats(x, k);
      double bits = 0.0;
      for (const auto& [context, table] : stats.tables) {
        const std::uint64_t total = table.total();
        std::vector<double> probs(table.successor_counts.size());
        for (std::size_t s = 0; s < probs.size(); ++s) {
          probs[s] = static_cast<double>(table.successor_counts[s]) / static_cast<double>(total);
        }
        model.transition_probs.emplace(context, std::move(probs));
        bits += count_entropy_bits(table.successor_counts);
      }
      model.literal.assign(x.indices().begin(), x.indices().begin() + k);
      model.entropy_bits = bits;
      model.nll_bits = bits;
      break;
    }
    case FamilyTag::Kind::Singleton:
      model.literal = x.indices();
      model.entropy_bits = 0.0;
      model.nll_bits = 0.0;
      break;
    case FamilyTag::Kind::UniformBaseline:
      model.entropy_bits =
          static_cast<double>(n) * std::log2(static_cast<double>(x.alphabet().size()));
      model.nll_bits = model.entropy_bits;
      break;
  }
  model.alpha_bits = model_codelength(model);
  return model;
}

FittedModel make_bernoulli_model(Alphabet alphabet, std::vector<double> probs, std::uint64_t n) {
  if (probs.size() != alphabet.size()) {
    throw std::invalid_argument("one probability per alphabet symbol required");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("probabilities must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("probabilities must sum to 1");
  }
  FittedModel model;
  model.family = FamilyTag::bernoulli();
  model.alphabet = std::move(alphabet);
  model.length = n;
  model.symbol_probs = std::move(probs);
  double per_symbol = 0.0;
  for (double p : model.symbol_probs) {
    if (p > 0.0) per_symbol -= p * std::log2(p);
  }
  model.entropy_bits = static_cast<double>(n) * per_symbol;
  model.nll_bits = model.entropy_bits;
  model.alpha_bits = model_codelength(model);
  return model;
}

FittedModel make_uniform_model(Alphabet alphabet, std::uint64_t n) {
  FittedModel model;
  model.family = FamilyTag::uniform_baseline();
  model.alphabet = std::move(alphabet);
  model.length = n;
  model.entropy_bits =
      static_cast<double>(n) * std::log2(static_cast<double>(model.alphabet.size()));
  model.nll_bits = model.entropy_bits;
  model.alpha_bits = model_codelength(model);
  return model;
}

SelectionResult select_model(const SymbolString& x, const std::vector<FamilyTag>& families,
                             double epsilon) {
  if (families.empty()) throw EmptyFamilyListError();
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");

  // Dedupe and order by complexity so the result is independent of the
  // caller's list order.
  std::vector<FamilyTag> ordered;
  for (const FamilyTag& f : families) {
    if (std::find(ordered.begin(), ordered.end(), f) == ordered.end()) {
      ordered.push_back(f);
    }
  }
  std::sort(ordered.begin(), ordered.end(), [](const FamilyTag& a, const FamilyTag& b) {
    return a.complexity_rank() < b.complexity_rank();
  });

  SelectionResult result;
  result.candidates.reserve(ordered.size());
  for (const FamilyTag& f : ordered) {
    ScoredCandidate c;
    c.model = fit(x, f);
    c.gap_bits = c.model.gap_bits();
    c.two_part_bits = c.model.two_part_bits();
    result.candidates.push_back(std::move(c));
  }

  double min_gap = kInf;
  for (const ScoredCandidate& c : result.candidates) {
    min_gap = std::min(min_gap, c.gap_bits);
  }
  const double gap_band = min_gap + epsilon * static_cast<double>(x.size());

  const ScoredCandidate* best = nullptr;
  for (ScoredCandidate& c : result.candidates) {
    c.kept = c.gap_bits <= gap_band;
    if (!c.kept) continue;
    if (best == nullptr || c.two_part_bits < best->two_part_bits ||
        (c.two_part_bits == best->two_part_bits &&
         (c.model.family.complexity_rank() < best->model.family.complexity_rank() ||
          (c.model.family.complexity_rank() == best->model.family.complexity_rank() &&
           c.model.alpha_bits < best->model.alpha_bits)))) {
      best = &c;
    }
  }

  result.winner = best->model;
  result.two_part_bits = best->two_part_bits;
  result.typicality_gap_bits = best->gap_bits;
  return result;
}

SymbolString pair_string(const SymbolString& x, const SymbolString& y, PairMode mode) {
  return mode == PairMode::Separator ? concat_with_separator(x, y) : concat(x, y);
}

SelectionResult select_model_joint(const SymbolString& x, const SymbolString& y,
                                   const std::vector<FamilyTag>& families, double epsilon,
                                   PairMode mode) {
  return select_model(pair_string(x, y, mode), families, epsilon);
}

ProductControl product_control(const SymbolString& x, const SymbolString& y,
                               const std::vector<FamilyTag>& families, double epsilon) {
  ProductControl control{select_model(x, families, epsilon),
                         select_model(y, families, epsilon), 0.0};
  control.two_part_bits = control.x_selection.two_part_bits + control.y_selection.two_part_bits;
  return control;
}

}  // namespace entkit
