#pragma once

#include <stdexcept>
#include <string>

namespace sisim {

/// Quadrature failed to reach the requested tolerance within its panel
/// budget. Carries the error estimate that was actually achieved.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error) {}

    double achieved_error() const { return achieved_error_; }

private:
    double achieved_error_;
};

/// A model invariant was breached at runtime (e.g. the carrying capacity
/// evaluated non-positive). Indicates a scenario error, not a solver one.
class ModelConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The step-size controller underflowed (stiffness or a non-smooth right
/// hand side inside a step). Carries the last time reached successfully.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double last_time)
        : std::runtime_error(what), last_time_(last_time) {}

    double last_time() const { return last_time_; }

private:
    double last_time_;
};

/// Equilibrium polishing or another analysis step failed to converge.
class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sisim
