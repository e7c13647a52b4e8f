#pragma once

namespace einlike {

inline constexpr const char* kToolName = "einlike";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace einlike
