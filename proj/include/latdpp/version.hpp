#pragma once

namespace latdpp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace latdpp
