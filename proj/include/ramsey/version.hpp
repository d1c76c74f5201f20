#pragma once

namespace ramsey {

// Recorded in certificates and reports; bump on any change that could alter
// exported bytes or verification results.
inline constexpr const char* kToolName = "ramsey-toolkit";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace ramsey
