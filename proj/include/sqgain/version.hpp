#pragma once

namespace sqgain {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sqgain
