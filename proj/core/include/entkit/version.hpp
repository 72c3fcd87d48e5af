#pragma once

namespace entkit {

inline constexpr const char* kToolName = "entkit";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace entkit
