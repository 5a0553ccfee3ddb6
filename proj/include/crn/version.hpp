#pragma once

namespace crn {

inline constexpr const char* kToolName = "crnloci";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

}  // namespace crn
