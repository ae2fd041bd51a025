#pragma once

#include <string_view>

namespace uavplan {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace uavplan
