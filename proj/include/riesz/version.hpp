#pragma once

#include <string_view>

namespace riesz {

inline constexpr std::string_view kVersion = "riesz 0.1.0";

} // namespace riesz
