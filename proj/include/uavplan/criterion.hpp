#pragma once

#include <string>
#include <string_view>

namespace uavplan {

// Network objective optimized by the trajectory planner.
enum class Criterion {
    pf,        // sum over users of log10(rate)
    sumrate,   // sum over users of rate
    fivepse,   // 5th percentile user rate
};

std::string_view to_string(Criterion c);

// Accepts "pf", "sumrate", "fivepse"; throws ConfigError otherwise.
Criterion criterion_from_string(std::string_view name);

}  // namespace uavplan
