#pragma once

#include <stdexcept>
#include <string>

namespace ocplab {

/// Input outside the mathematical domain of an operation (bad point, bad control, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operation invoked with inconsistent or unsupported parameters.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unknown problem id or missing registry entry.
struct NotFoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical blow-up during integration or marching; carries the time it happened.
struct DivergenceError : std::runtime_error {
    double time;
    explicit DivergenceError(const std::string& what, double t)
        : std::runtime_error(what), time(t) {}
};

/// A numerical estimate could not be formed at all (e.g. no finite gradients).
struct EstimationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ocplab
