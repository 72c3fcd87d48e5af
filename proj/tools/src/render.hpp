#pragma once

#include <string>

#include "entkit/distances.hpp"
#include "json.hpp"

namespace entkit::cli {

// Locale-independent shortest round-trip decimal form (to_chars).
std::string format_double(double value);

// Locale-independent fixed-precision form; NaN renders as "nan".
std::string format_fixed(double value, int precision);

// Wraps a command's result in the common envelope: tool name, version,
// command, and the full effective configuration, with sorted keys.
std::string render_envelope(const std::string& command, const nlohmann::json& config,
                            const nlohmann::json& result);

nlohmann::json matrix_to_json(const DistanceMatrix& matrix, const MetricAuditReport& audit);

// "label,a,b,..." header, one row per item; NaN cells render as "nan".
std::string matrix_to_csv(const DistanceMatrix& matrix);

// Relaxed PHYLIP square matrix: count line, then rows with the label padded
// to 10 characters and fixed 6-decimal values.
std::string matrix_to_phylip(const DistanceMatrix& matrix);

}  // namespace entkit::cli
