#pragma once

#include <stdexcept>
#include <string>

namespace ppgfit {

// Bad inputs, files or configuration. The CLI maps this to exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failures (singular covariances, diverged optimization). Exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ppgfit
