#pragma once

namespace randgrasp::core {

inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace randgrasp::core
