#pragma once

#include <stdexcept>
#include <string>

namespace swarmopt {

/// Invalid experiment/algorithm configuration (CLI exit code 2).
class config_error : public std::invalid_argument {
public:
    explicit config_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Numerical failure at runtime, e.g. a diverged computation (CLI exit code 3).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem failure while emitting data (CLI exit code 4).
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace swarmopt
