#include "uavplan/criterion.hpp"

#include "uavplan/errors.hpp"

namespace uavplan {

std::string_view to_string(Criterion c) {
    switch (c) {
        case Criterion::pf: return "pf";
        case Criterion::sumrate: return "sumrate";
        case Criterion::fivepse: return "fivepse";
    }
    return "pf";
}

Criterion criterion_from_string(std::string_view name) {
    if (name == "pf") return Criterion::pf;
    if (name == "sumrate") return Criterion::sumrate;
    if (name == "fivepse") return Criterion::fivepse;
    throw ConfigError("unknown criterion '" + std::string(name) +
                      "' (expected pf, sumrate, or fivepse)");
}

}  // namespace uavplan
