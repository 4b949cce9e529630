#pragma once

namespace ionpulse {

inline constexpr const char* version = "0.1.0";

}  // namespace ionpulse
