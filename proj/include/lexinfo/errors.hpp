#pragma once

#include <stdexcept>
#include <string>

namespace lexinfo {

// Bad user input: missing files, malformed data, contract violations at the
// API boundary. CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric failure during computation (divergence, non-finite values).
// CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lexinfo
