#pragma once

namespace lgpoly {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace lgpoly
