#pragma once

#include <stdexcept>
#include <string>

namespace b4nls {

/// Invalid configuration or parameter set (rejected before any computation).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Nonlinear solver failed to converge; carries the last residual seen.
class SolveError : public std::runtime_error {
public:
    SolveError(const std::string& msg, double last_residual, int iterations)
        : std::runtime_error(msg), last_residual(last_residual), iterations(iterations) {}
    double last_residual;
    int iterations;
};

/// NaN/Inf or other numerical breakdown during time evolution.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& msg, double last_good_time)
        : std::runtime_error(msg), last_good_time(last_good_time) {}
    double last_good_time;
};

/// Post-processing fit could not produce a reliable answer.
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace b4nls
