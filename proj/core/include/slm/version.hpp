#pragma once

namespace slm {

inline constexpr const char* kToolName = "slmlab";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace slm
