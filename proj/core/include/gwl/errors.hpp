#pragma once

#include <stdexcept>
#include <string>

namespace gwl {

/// Invalid parameter passed to a constructor or operation.
struct ParamError : std::invalid_argument {
    explicit ParamError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed or inconsistent experiment configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Overflow, divergence, non-convergence or instability (CLI exit code 3).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gwl
