#include "entkit/distances.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "entkit/entropy.hpp"
#include "entkit/errors.hpp"
#include "entkit/huffman.hpp"
#include "entkit/version.hpp"

namespace entkit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double entropy_of_probs(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

std::string outcome_label(int symbol) {
  if (symbol >= 33 && symbol <= 126) {
    return std::string(1, static_cast<char>(symbol));
  }
  return std::to_string(symbol);
}

}  // namespace

double ncd(const CompressorHandle& handle, const SymbolString& x, const SymbolString& y) {
  const double zx = codelength(handle, x).total_bits;
  const double zy = codelength(handle, y).total_bits;
  const double zxy = pair_codelength(handle, x, y).total_bits;
  return (zxy - std::min(zx, zy)) / std::max(zx, zy);
}

NcdBreakdown ncd_decomposed(const SymbolString& x, const SymbolString& y, bool separator_mode) {
  if (x.empty() || y.empty()) throw EmptyInputError();
  const CompressedBlob bx = huffman_compress(x);
  const CompressedBlob by = huffman_compress(y);
  const CompressedBlob bxy =
      huffman_compress(separator_mode ? concat_with_separator(x, y) : concat(x, y));

  NcdBreakdown result;
  result.alpha_x = static_cast<double>(bx.header_bits);
  result.payload_x = static_cast<double>(bx.payload_bits);
  result.alpha_y = static_cast<double>(by.header_bits);
  result.payload_y = static_cast<double>(by.payload_bits);
  result.alpha_xy = static_cast<double>(bxy.header_bits);
  result.payload_xy = static_cast<double>(bxy.payload_bits);

  const double zx = result.alpha_x + result.payload_x;
  const double zy = result.alpha_y + result.payload_y;
  const double zxy = result.alpha_xy + result.payload_xy;
  result.value = (zxy - std::min(zx, zy)) / std::max(zx, zy);
  return result;
}

NidBreakdown nid_empirical(const SymbolString& x, const SymbolString& y,
                           const std::vector<FamilyTag>& families, double epsilon,
                           PairMode mode) {
  const SelectionResult sel_x = select_model(x, families, epsilon);
  const SelectionResult sel_y = select_model(y, families, epsilon);

  // The joint runs on the canonically ordered pair, making the distance
  // exactly symmetric even for order-sensitive pair strings.
  const bool swap = y.indices() < x.indices();
  const SymbolString& a = swap ? y : x;
  const SymbolString& b = swap ? x : y;
  const SelectionResult sel_joint = select_model_joint(a, b, families, epsilon, mode);

  NidBreakdown result;
  result.joint_bits = sel_joint.two_part_bits;
  result.x_bits = sel_x.two_part_bits;
  result.y_bits = sel_y.two_part_bits;
  result.independence_bits = result.x_bits + result.y_bits;
  result.joint_family = sel_joint.winner.family.name();
  result.x_family = sel_x.winner.family.name();
  result.y_family = sel_y.winner.family.name();
  result.value = (result.joint_bits - std::min(result.x_bits, result.y_bits)) /
                 std::max(result.x_bits, result.y_bits);
  return result;
}

JointTable::JointTable(std::vector<std::string> outcomes_x, std::vector<std::string> outcomes_y,
                       std::vector<std::vector<double>> p)
    : outcomes_x_(std::move(outcomes_x)), outcomes_y_(std::move(outcomes_y)), p_(std::move(p)) {
  if (outcomes_x_.empty() || outcomes_y_.empty()) {
    throw std::invalid_argument("joint table must have at least one outcome per side");
  }
  if (p_.size() != outcomes_x_.size()) {
    throw std::invalid_argument("joint table row count must match X outcomes");
  }
  double sum = 0.0;
  for (const auto& row : p_) {
    if (row.size() != outcomes_y_.size()) {
      throw std::invalid_argument("joint table column count must match Y outcomes");
    }
    for (double v : row) {
      if (!(v >= 0.0)) {
        throw std::invalid_argument("joint table entries must be nonnegative");
      }
      sum += v;
    }
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("joint table entries must sum to 1");
  }
}

std::vector<double> JointTable::marginal_x() const {
  std::vector<double> m(outcomes_x_.size(), 0.0);
  for (std::size_t i = 0; i < p_.size(); ++i) {
    for (double v : p_[i]) m[i] += v;
  }
  return m;
}

std::vector<double> JointTable::marginal_y() const {
  std::vector<double> m(outcomes_y_.size(), 0.0);
  for (const auto& row : p_) {
    for (std::size_t j = 0; j < row.size(); ++j) m[j] += row[j];
  }
  return m;
}

EhResult e_h(const JointTable& joint) {
  EhResult result;
  result.h_x = entropy_of_probs(joint.marginal_x());
  result.h_y = entropy_of_probs(joint.marginal_y());
  double h_joint = 0.0;
  for (const auto& row : joint.probabilities()) {
    for (double v : row) {
      if (v > 0.0) h_joint -= v * std::log2(v);
    }
  }
  result.h_joint = h_joint;
  result.mutual_information = result.h_x + result.h_y - result.h_joint;

  const double hi = std::max(result.h_x, result.h_y);
  const double lo = std::min(result.h_x, result.h_y);
  if (hi == 0.0) throw DegenerateJointError();

  result.value = (result.h_joint - lo) / hi;
  result.value_alt = 1.0 - result.mutual_information / hi;
  if (std::abs(result.value - result.value_alt) > 1e-12) {
    throw std::logic_error("e_H forms diverged beyond 1e-12");
  }
  return result;
}

EhResult e_h_from_strings(const SymbolString& x, const SymbolString& y) {
  if (x.size() != y.size()) throw LengthMismatchError(x.size(), y.size());
  if (x.empty()) throw EmptyStringError();

  const std::size_t rows = x.alphabet().size();
  const std::size_t cols = y.alphabet().size();
  std::vector<std::vector<std::uint64_t>> counts(rows, std::vector<std::uint64_t>(cols, 0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    ++counts[x[i]][y[i]];
  }

  std::vector<std::string> outcomes_x(rows), outcomes_y(cols);
  for (std::size_t i = 0; i < rows; ++i) outcomes_x[i] = outcome_label(x.alphabet().symbol(i));
  for (std::size_t j = 0; j < cols; ++j) outcomes_y[j] = outcome_label(y.alphabet().symbol(j));

  const double n = static_cast<double>(x.size());
  std::vector<std::vector<double>> p(rows, std::vector<double>(cols, 0.0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      p[i][j] = static_cast<double>(counts[i][j]) / n;
    }
  }
  return e_h(JointTable(std::move(outcomes_x), std::move(outcomes_y), std::move(p)));
}

DistanceMatrix distance_matrix(const LabeledCorpus& corpus,
                               const std::function<double(const SymbolString&,
                                                          const SymbolString&)>& pair_distance,
                               MatrixMethod method, bool symmetric, unsigned threads) {
  const std::size_t n = corpus.size();
  if (n < 2) throw std::invalid_argument("distance matrix requires at least two items");

  DistanceMatrix matrix;
  matrix.labels.reserve(n);
  for (const auto& [label, value] : corpus) matrix.labels.push_back(label);
  matrix.method = std::move(method);
  matrix.method.symmetrized = !symmetric;
  matrix.values.assign(n, std::vector<double>(n, kNaN));

  struct Task {
    std::size_t row, col;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      tasks.push_back({i, j});
      if (!symmetric && i != j) tasks.push_back({j, i});
    }
  }

  // Directed results, indexed like tasks so worker threads never contend.
  std::vector<double> directed(tasks.size(), kNaN);
  struct TaskError {
    std::size_t row, col;
    std::string message;
  };
  std::mutex error_mutex;
  std::vector<TaskError> task_errors;

  unsigned worker_count = threads > 0 ? threads : std::thread::hardware_concurrency();
  worker_count = std::max(1u, std::min<unsigned>(worker_count, tasks.size()));

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const Task& task = tasks[t];
      try {
        directed[t] = pair_distance(corpus[task.row].second, corpus[task.col].second);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        task_errors.push_back({task.row, task.col, e.what()});
      }
    }
  };
  if (worker_count == 1) {
    work();
  } else {
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (unsigned w = 0; w < worker_count; ++w) workers.emplace_back(work);
    for (std::thread& w : workers) w.join();
  }

  if (symmetric) {
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      matrix.values[tasks[t].row][tasks[t].col] = directed[t];
      matrix.values[tasks[t].col][tasks[t].row] = directed[t];
    }
  } else {
    std::vector<std::vector<double>> dir(n, std::vector<double>(n, kNaN));
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      dir[tasks[t].row][tasks[t].col] = directed[t];
    }
    // Average the two directions; either direction failing poisons the cell.
    for (std::size_t i = 0; i < n; ++i) {
      matrix.values[i][i] = dir[i][i];
      for (std::size_t j = i + 1; j < n; ++j) {
        matrix.values[i][j] = matrix.values[j][i] = 0.5 * (dir[i][j] + dir[j][i]);
        matrix.raw_values.push_back({i, j, dir[i][j]});
        matrix.raw_values.push_back({j, i, dir[j][i]});
      }
    }
  }

  std::sort(task_errors.begin(), task_errors.end(), [](const TaskError& a, const TaskError& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (const TaskError& e : task_errors) {
    matrix.errors.push_back({matrix.labels[e.row], matrix.labels[e.col], e.message});
  }
  return matrix;
}

DistanceMatrix ncd_matrix(const LabeledCorpus& corpus, const CompressorHandle& handle,
                          unsigned threads) {
  MatrixMethod method;
  method.kind = "ncd";
  method.detail = handle.describe();
  method.tool_version = kToolVersion;
  return distance_matrix(
      corpus,
      [&handle](const SymbolString& a, const SymbolString& b) { return ncd(handle, a, b); },
      std::move(method), handle.is_builtin(), threads);
}

DistanceMatrix nid_matrix(const LabeledCorpus& corpus, const std::vector<FamilyTag>& families,
                          double epsilon, PairMode mode, unsigned threads) {
  MatrixMethod method;
  method.kind = "nid";
  std::string names;
  for (const FamilyTag& f : families) {
    if (!names.empty()) names += ",";
    names += f.name();
  }
  method.detail = names;
  method.epsilon = epsilon;
  method.tool_version = kToolVersion;
  return distance_matrix(
      corpus,
      [&families, epsilon, mode](const SymbolString& a, const SymbolString& b) {
        return nid_empirical(a, b, families, epsilon, mode).value;
      },
      std::move(method), true, threads);
}

DistanceMatrix eh_matrix(const LabeledCorpus& corpus, unsigned threads) {
  MatrixMethod method;
  method.kind = "eh";
  method.detail = "positionwise empirical joint";
  method.tool_version = kToolVersion;
  return distance_matrix(
      corpus,
      [](const SymbolString& a, const SymbolString& b) { return e_h_from_strings(a, b).value; },
      std::move(method), true, threads);
}

MetricAuditReport audit_metric(const DistanceMatrix& matrix, double slack) {
  if (slack < 0.0) throw std::invalid_argument("slack must be nonnegative");
  MetricAuditReport report;
  report.slack = slack;
  const std::size_t n = matrix.labels.size();
  const auto& v = matrix.values;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(v[i][j])) {
        ++report.nonfinite_entries;
        continue;
      }
      ++report.range_checks;
      if (v[i][j] < -slack || v[i][j] > 1.0 + slack) ++report.range_violations;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(v[i][i])) continue;
    ++report.identity_checks;
    if (v[i][i] > slack) ++report.identity_violations;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!std::isfinite(v[i][j]) || !std::isfinite(v[j][i])) continue;
      ++report.symmetry_checks;
      if (std::abs(v[i][j] - v[j][i]) > slack) ++report.symmetry_violations;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (!std::isfinite(v[i][k]) || !std::isfinite(v[i][j]) || !std::isfinite(v[j][k])) {
          continue;
        }
        ++report.triangle_checks;
        const double excess = v[i][k] - v[i][j] - v[j][k];
        report.worst_triangle_excess = std::max(report.worst_triangle_excess, excess);
        if (excess > slack) ++report.triangle_violations;
      }
    }
  }
  return report;
}

}  // namespace entkit
