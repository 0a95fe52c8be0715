#pragma once

namespace pairtab {

inline constexpr const char* kToolName = "pairtab";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace pairtab
