#pragma once

namespace cbrs {

inline constexpr const char* kToolName = "tract-eroder";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace cbrs
