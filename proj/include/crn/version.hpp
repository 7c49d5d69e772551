#pragma once

namespace crn {

inline constexpr const char* kVersion = "crnsw 0.1.0";

}  // namespace crn
