#pragma once

namespace dualent {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace dualent
