#pragma once

namespace crn {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace crn
