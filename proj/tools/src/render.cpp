#include "render.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "entkit/version.hpp"

namespace entkit::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, end);
}

std::string format_fixed(double value, int precision) {
  if (std::isnan(value)) return "nan";
  char buffer[80];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value,
                                 std::chars_format::fixed, precision);
  return std::string(buffer, end);
}

std::string render_envelope(const std::string& command, const nlohmann::json& config,
                            const nlohmann::json& result) {
  nlohmann::json envelope{
      {"tool", kToolName},
      {"version", kToolVersion},
      {"command", command},
      {"config", config},
      {"result", result},
  };
  return envelope.dump(2) + "\n";
}

nlohmann::json matrix_to_json(const DistanceMatrix& matrix, const MetricAuditReport& audit) {
  nlohmann::json out;
  out["labels"] = matrix.labels;
  nlohmann::json values = nlohmann::json::array();
  for (const auto& row : matrix.values) {
    nlohmann::json json_row = nlohmann::json::array();
    for (double v : row) {
      if (std::isnan(v)) {
        json_row.push_back(nullptr);
      } else {
        json_row.push_back(v);
      }
    }
    values.push_back(std::move(json_row));
  }
  out["values"] = std::move(values);
  out["method"] = {
      {"kind", matrix.method.kind},
      {"detail", matrix.method.detail},
      {"epsilon", matrix.method.epsilon},
      {"symmetrized", matrix.method.symmetrized},
      {"tool_version", matrix.method.tool_version},
  };
  nlohmann::json errors = nlohmann::json::array();
  for (const PairError& e : matrix.errors) {
    errors.push_back({{"a", e.label_a}, {"b", e.label_b}, {"message", e.message}});
  }
  out["errors"] = std::move(errors);
  if (matrix.method.symmetrized && !matrix.raw_values.empty()) {
    nlohmann::json raw = nlohmann::json::array();
    for (const RawDirectedValue& r : matrix.raw_values) {
      raw.push_back({{"row", r.row}, {"col", r.col}, {"value", r.value}});
    }
    out["raw_values"] = std::move(raw);
  }
  out["audit"] = {
      {"slack", audit.slack},
      {"range_checks", audit.range_checks},
      {"range_violations", audit.range_violations},
      {"symmetry_checks", audit.symmetry_checks},
      {"symmetry_violations", audit.symmetry_violations},
      {"identity_checks", audit.identity_checks},
      {"identity_violations", audit.identity_violations},
      {"triangle_checks", audit.triangle_checks},
      {"triangle_violations", audit.triangle_violations},
      {"nonfinite_entries", audit.nonfinite_entries},
      {"worst_triangle_excess", audit.worst_triangle_excess},
      {"total_violations", audit.total_violations()},
  };
  return out;
}

std::string matrix_to_csv(const DistanceMatrix& matrix) {
  std::string out = "label";
  for (const std::string& label : matrix.labels) {
    out += ',';
    out += label;
  }
  out += '\n';
  for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
    out += matrix.labels[i];
    for (double v : matrix.values[i]) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string matrix_to_phylip(const DistanceMatrix& matrix) {
  std::string out = std::to_string(matrix.labels.size()) + "\n";
  for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
    std::string label = matrix.labels[i].substr(0, 10);
    label.resize(10, ' ');
    out += label;
    for (double v : matrix.values[i]) {
      out += ' ';
      out += format_fixed(v, 6);
    }
    out += '\n';
  }
  return out;
}

}  // namespace entkit::cli
