#pragma once

namespace entmap {

inline constexpr const char* kVersion = "0.1.0";

} // namespace entmap
