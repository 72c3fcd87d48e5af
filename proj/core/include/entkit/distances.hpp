#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entkit/alphabet.hpp"
#include "entkit/compressor.hpp"
#include "entkit/models.hpp"

namespace entkit {

// Normalized compression distance
//   (|Z(xy)| - min(|Z(x)|, |Z(y)|)) / max(|Z(x)|, |Z(y)|)
// over total codelengths. Exactly symmetric for the built-in coder, whose
// header and optimal payload size are invariant under swapping the halves.
double ncd(const CompressorHandle& handle, const SymbolString& x, const SymbolString& y);

// NCD from the built-in coder's header/payload split, using exact
// pre-padding bit counts for every term.
struct NcdBreakdown {
  double value = 0.0;
  double alpha_x = 0.0, payload_x = 0.0;
  double alpha_y = 0.0, payload_y = 0.0;
  double alpha_xy = 0.0, payload_xy = 0.0;
};

NcdBreakdown ncd_decomposed(const SymbolString& x, const SymbolString& y,
                            bool separator_mode = false);

// Normalized information distance with two-part empirical entropy standing
// in for Kolmogorov complexity:
//   (joint - min(hx, hy)) / max(hx, hy)
// where hx, hy, joint are selected two-part costs. The joint selection runs
// on the canonically ordered pair so the function is exactly symmetric.
struct NidBreakdown {
  double value = 0.0;
  double joint_bits = 0.0;
  double x_bits = 0.0;
  double y_bits = 0.0;
  double independence_bits = 0.0;  // product control: x_bits + y_bits
  std::string joint_family;
  std::string x_family;
  std::string y_family;
};

NidBreakdown nid_empirical(const SymbolString& x, const SymbolString& y,
                           const std::vector<FamilyTag>& families, double epsilon,
                           PairMode mode = PairMode::Plain);

// A finite joint distribution over two discrete variables.
class JointTable {
 public:
  // p[i][j] = P(X = outcomes_x[i], Y = outcomes_y[j]). Entries must be
  // nonnegative and sum to 1 within 1e-9.
  JointTable(std::vector<std::string> outcomes_x, std::vector<std::string> outcomes_y,
             std::vector<std::vector<double>> p);

  const std::vector<std::string>& outcomes_x() const noexcept { return outcomes_x_; }
  const std::vector<std::string>& outcomes_y() const noexcept { return outcomes_y_; }
  const std::vector<std::vector<double>>& probabilities() const noexcept { return p_; }

  std::vector<double> marginal_x() const;
  std::vector<double> marginal_y() const;

 private:
  std::vector<std::string> outcomes_x_;
  std::vector<std::string> outcomes_y_;
  std::vector<std::vector<double>> p_;
};

// Entropy-based distance e_H = (H(X,Y) - min(H(X), H(Y))) / max(H(X), H(Y)),
// together with the algebraically equal form 1 - I(X;Y) / max(H(X), H(Y)).
struct EhResult {
  double value = 0.0;      // joint-minus-min form
  double value_alt = 0.0;  // one-minus-mutual-information form
  double h_x = 0.0;
  double h_y = 0.0;
  double h_joint = 0.0;
  double mutual_information = 0.0;
};

// Throws DegenerateJointError when both marginals are deterministic.
// The two forms are verified to agree within 1e-12.
EhResult e_h(const JointTable& joint);

// e_H of the empirical joint distribution of aligned positions of x and y.
// Requires |x| == |y| >= 1.
EhResult e_h_from_strings(const SymbolString& x, const SymbolString& y);

// How one entry of a distance matrix was produced.
struct MatrixMethod {
  std::string kind;          // "ncd", "nid", or "eh"
  std::string detail;        // compressor or family list description
  double epsilon = 0.0;      // nid only
  bool symmetrized = false;  // values are averages of an asymmetric raw method
  std::string tool_version;
};

struct PairError {
  std::string label_a;
  std::string label_b;
  std::string message;
};

// Raw directed value retained when an asymmetric method is averaged.
struct RawDirectedValue {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

struct DistanceMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;  // NaN where the pair failed
  MatrixMethod method;
  std::vector<PairError> errors;
  std::vector<RawDirectedValue> raw_values;  // populated only when symmetrized
};

using LabeledCorpus = std::vector<std::pair<std::string, SymbolString>>;

// Full pairwise matrix, diagonal included. `symmetric` methods are computed
// once per unordered pair; asymmetric methods are computed in both
// directions and averaged, raw values kept in the result. Pair failures are
// collected per label pair, not thrown. Requires at least two items.
DistanceMatrix distance_matrix(const LabeledCorpus& corpus,
                               const std::function<double(const SymbolString&,
                                                          const SymbolString&)>& pair_distance,
                               MatrixMethod method, bool symmetric, unsigned threads = 0);

// Convenience builders for the three shipped methods.
DistanceMatrix ncd_matrix(const LabeledCorpus& corpus, const CompressorHandle& handle,
                          unsigned threads = 0);
DistanceMatrix nid_matrix(const LabeledCorpus& corpus, const std::vector<FamilyTag>& families,
                          double epsilon, PairMode mode = PairMode::Plain, unsigned threads = 0);
DistanceMatrix eh_matrix(const LabeledCorpus& corpus, unsigned threads = 0);

// Counts of metric-property violations beyond an additive slack.
struct MetricAuditReport {
  double slack = 0.0;
  std::uint64_t range_checks = 0, range_violations = 0;
  std::uint64_t symmetry_checks = 0, symmetry_violations = 0;
  std::uint64_t identity_checks = 0, identity_violations = 0;
  std::uint64_t triangle_checks = 0, triangle_violations = 0;
  std::uint64_t nonfinite_entries = 0;
  double worst_triangle_excess = 0.0;

  std::uint64_t total_violations() const noexcept {
    return range_violations + symmetry_violations + identity_violations + triangle_violations;
  }
};

MetricAuditReport audit_metric(const DistanceMatrix& matrix, double slack);

}  // namespace entkit
