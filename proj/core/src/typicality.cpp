#include "entkit/typicality.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "entkit/errors.hpp"

namespace entkit {

namespace {

// |A|^n, throwing when it would exceed cap.
std::uint64_t checked_power(std::uint64_t sigma, std::uint64_t n, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (total > cap / (sigma == 0 ? 1 : sigma)) {
      throw EnumerationTooLargeError("|A|^n exceeds cap " + std::to_string(cap) +
                                     " for |A| = " + std::to_string(sigma) +
                                     ", n = " + std::to_string(n));
    }
    total *= sigma;
  }
  if (total > cap) {
    throw EnumerationTooLargeError("|A|^n exceeds cap " + std::to_string(cap));
  }
  return total;
}

// Walks all strings over sigma symbols of length n, calling fn with the
// index vector of each.
template <typename Fn>
void for_each_string(std::size_t sigma, std::size_t n, Fn&& fn) {
  std::vector<std::uint16_t> odometer(n, 0);
  for (;;) {
    fn(odometer);
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++odometer[pos] < sigma) break;
      odometer[pos] = 0;
      if (pos == 0) return;
    }
    if (n == 0) return;
  }
}

double log2_multinomial(std::uint64_t n, std::span<const std::uint64_t> counts) {
  double ln = std::lgamma(static_cast<double>(n) + 1.0);
  for (std::uint64_t c : counts) {
    ln -= std::lgamma(static_cast<double>(c) + 1.0);
  }
  return ln / std::numbers::ln2;
}

// Walks all count vectors over sigma symbols summing to n.
template <typename Fn>
void for_each_composition(std::uint64_t n, std::size_t sigma, std::vector<std::uint64_t>& counts,
                          std::size_t slot, Fn&& fn) {
  if (slot + 1 == sigma) {
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < slot; ++i) used += counts[i];
    counts[slot] = n - used;
    fn(counts);
    return;
  }
  std::uint64_t used = 0;
  for (std::size_t i = 0; i < slot; ++i) used += counts[i];
  for (std::uint64_t c = 0; c <= n - used; ++c) {
    counts[slot] = c;
    for_each_composition(n, sigma, counts, slot + 1, fn);
  }
}

}  // namespace

bool is_typical(const FittedModel& model, const SymbolString& y, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
  const double nll = model.neg_log2_prob(y);
  const double gap = std::abs(model.entropy_bits - nll);
  return gap <= epsilon * static_cast<double>(model.length);
}

TypicalSetReport typical_set_report(const FittedModel& model, double epsilon, std::uint64_t cap) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
  const std::uint64_t sigma = model.alphabet.size();
  const std::uint64_t n = model.length;
  const std::uint64_t total = checked_power(sigma, n, cap);

  TypicalSetReport report;
  report.family = model.family;
  report.n = n;
  report.alphabet_size = sigma;
  report.epsilon = epsilon;
  report.entropy_bits = model.entropy_bits;
  report.enumerated = total;

  const double log2_sigma = std::log2(static_cast<double>(sigma));
  const double en = epsilon * static_cast<double>(n);
  report.bits.gap_tolerance_bits = en;
  // In base-|A| units one unit of gap is log2|A| bits. A unary alphabet has
  // no base-|A| scale; mirror the bits view there.
  report.base_sigma.gap_tolerance_bits = sigma > 1 ? en * log2_sigma : en;

  for_each_string(sigma, n, [&](const std::vector<std::uint16_t>& indices) {
    const double nll = model.neg_log2_prob(std::span<const std::uint16_t>(indices));
    const double prob = std::isinf(nll) ? 0.0 : std::exp2(-nll);
    report.probability_sum += prob;
    const double gap = std::abs(model.entropy_bits - nll);
    if (gap <= report.bits.gap_tolerance_bits) {
      ++report.bits.typical_count;
      report.bits.typical_probability += prob;
    }
    if (gap <= report.base_sigma.gap_tolerance_bits) {
      ++report.base_sigma.typical_count;
      report.base_sigma.typical_probability += prob;
    }
  });

  const double h = model.entropy_bits;
  report.bits.cardinality_lower = (1.0 - epsilon) * std::exp2(h - en);
  report.bits.cardinality_upper = std::exp2(h + en);
  const double base_scale = sigma > 1 ? en * log2_sigma : en;
  report.base_sigma.cardinality_lower = (1.0 - epsilon) * std::exp2(h - base_scale);
  report.base_sigma.cardinality_upper = std::exp2(h + base_scale);

  for (TypicalSetView* view : {&report.bits, &report.base_sigma}) {
    const double count = static_cast<double>(view->typical_count);
    view->lower_holds = count >= view->cardinality_lower;
    view->upper_holds = count <= view->cardinality_upper;
  }
  return report;
}

std::vector<MassPoint> bernoulli_atypical_mass_curve(const std::vector<double>& probs,
                                                     const std::vector<std::uint64_t>& lengths,
                                                     double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
  if (probs.empty()) throw std::invalid_argument("at least one symbol probability required");
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("probabilities must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("probabilities must sum to 1");

  const std::size_t sigma = probs.size();
  double per_symbol_entropy = 0.0;
  for (double p : probs) {
    if (p > 0.0) per_symbol_entropy -= p * std::log2(p);
  }

  std::vector<MassPoint> curve;
  curve.reserve(lengths.size());
  for (std::uint64_t n : lengths) {
    // Composition count is C(n + sigma - 1, sigma - 1); keep it sane.
    double approx = 1.0;
    for (std::size_t i = 1; i < sigma; ++i) {
      approx *= static_cast<double>(n + i) / static_cast<double>(i);
    }
    if (approx > 5e7) {
      throw EnumerationTooLargeError("too many count vectors for |A| = " +
                                     std::to_string(sigma) + ", n = " + std::to_string(n));
    }

    const double entropy_bits = static_cast<double>(n) * per_symbol_entropy;
    const double tolerance = epsilon * static_cast<double>(n);
    MassPoint point;
    point.n = n;

    std::vector<std::uint64_t> counts(sigma, 0);
    for_each_composition(n, sigma, counts, 0, [&](const std::vector<std::uint64_t>& c) {
      double nll = 0.0;
      bool possible = true;
      for (std::size_t i = 0; i < sigma; ++i) {
        if (c[i] == 0) continue;
        if (probs[i] <= 0.0) {
          possible = false;
          break;
        }
        nll -= static_cast<double>(c[i]) * std::log2(probs[i]);
      }
      if (!possible) return;  // zero-probability class carries no mass
      const double log2_class_prob = log2_multinomial(n, c) - nll;
      const double mass = std::exp2(log2_class_prob);
      if (std::abs(entropy_bits - nll) <= tolerance) {
        point.typical_mass += mass;
      } else {
        point.atypical_mass += mass;
      }
    });
    curve.push_back(point);
  }
  return curve;
}

double atypical_mass_by_enumeration(const FittedModel& model, double epsilon, std::uint64_t cap) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
  const std::uint64_t sigma = model.alphabet.size();
  checked_power(sigma, model.length, cap);

  const double tolerance = epsilon * static_cast<double>(model.length);
  double mass = 0.0;
  for_each_string(sigma, model.length, [&](const std::vector<std::uint16_t>& indices) {
    const double nll = model.neg_log2_prob(std::span<const std::uint16_t>(indices));
    if (std::isinf(nll)) return;
    if (std::abs(model.entropy_bits - nll) > tolerance) {
      mass += std::exp2(-nll);
    }
  });
  return mass;
}

}  // namespace entkit
