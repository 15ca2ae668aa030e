#pragma once

#include <stdexcept>
#include <string>

namespace nsv {

/// Raised when an operation needs structure the domain does not carry
/// (e.g. the nonlinear convolution on a synthetic spectrum).
class unsupported_operation : public std::logic_error {
public:
    explicit unsupported_operation(const std::string& what)
        : std::logic_error(what) {}
};

/// Raised by the time integrator when the state stops being finite.
/// Carries the trajectory time at which the blow-up was detected.
class numerical_blowup : public std::runtime_error {
public:
    numerical_blowup(const std::string& what, double time)
        : std::runtime_error(what), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

/// Raised by the config parser and CLI validation (exit code 2 territory).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace nsv
