#pragma once

namespace mtasep {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mtasep
