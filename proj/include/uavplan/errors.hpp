#pragma once

#include <stdexcept>
#include <string>

namespace uavplan {

// Invalid configuration file, schema violation, or broken scenario invariant.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mission cannot be completed within the time budget.
class InfeasibleMissionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem failures and output collisions.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace uavplan
