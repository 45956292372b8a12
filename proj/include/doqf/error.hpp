#pragma once

#include <stdexcept>
#include <string>

namespace doqf {

// Bad user-facing parameters (CLI exit code 2).
class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// Iterative or numerical routine failed to meet its tolerance (CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace doqf
