#pragma once

namespace rotorbit {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace rotorbit
