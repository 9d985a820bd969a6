#pragma once

namespace bhikar {

inline constexpr const char* kToolName = "bhikar";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace bhikar
