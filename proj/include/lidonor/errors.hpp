#pragma once

#include <stdexcept>
#include <string>

namespace lidonor {

// Bad configuration input (unknown key, malformed file).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Physically inconsistent or out-of-range input.
struct ValidationError : std::invalid_argument {
    explicit ValidationError(const std::string& msg)
        : std::invalid_argument(msg) {}
};

// Quadrature / integrator failure with diagnostics in the message.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lidonor
