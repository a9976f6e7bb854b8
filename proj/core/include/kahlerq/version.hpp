#pragma once

namespace kahlerq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kahlerq
