#pragma once

namespace ipr {

inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace ipr
