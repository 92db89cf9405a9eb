#pragma once

#include <stdexcept>
#include <string>

namespace qav {

// Bad or inconsistent input (CLI exit code 2).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally valid input the tool deliberately does not handle (exit code 3).
struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qav
