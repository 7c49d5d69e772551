#pragma once

#include <stdexcept>
#include <string>

namespace crn {

// Invalid model parameters (rates, counts, probabilities out of range).
struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Bad experiment configuration (unknown scenario, empty sweep, ...). CLI maps this to exit 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem trouble (unreadable config, unwritable output dir). CLI maps this to exit 3.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crn
