#pragma once

namespace coxdiv {

inline constexpr const char* kToolName = "coxdiv";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace coxdiv
