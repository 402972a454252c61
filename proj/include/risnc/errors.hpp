#pragma once

#include <stdexcept>
#include <string>

namespace risnc {

// Rejected scenario configuration (bad powers, odd element counts, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature did not converge within the allowed refinements. Carries the
// last two estimates so callers can judge how far apart they were.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double last, double previous)
        : std::runtime_error(what), last_estimate(last), previous_estimate(previous) {}

    double last_estimate;
    double previous_estimate;
};

// The literally-typeset MGF evaluated above 1, which is impossible for a
// nonnegative variate. Raised only in printed mode; carries the offending
// value as evidence.
class InvalidMgfError : public std::runtime_error {
public:
    InvalidMgfError(const std::string& what, double value)
        : std::runtime_error(what), value(value) {}

    double value;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace risnc
