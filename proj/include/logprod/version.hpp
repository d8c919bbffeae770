#pragma once

namespace logprod {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace logprod
