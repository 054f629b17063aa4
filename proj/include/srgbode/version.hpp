#pragma once

namespace srgbode {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace srgbode
