#pragma once

#include <memory>
#include <utility>
#include <variant>
#include <vector>

namespace sisim {

struct TimeFunction;

/// f(t) = value
struct Constant {
    double value = 0.0;
    bool operator==(const Constant&) const = default;
};

/// f(t) = mean + amplitude * sin(2*pi*t/period + phase), period > 0
struct Sinusoid {
    double mean = 0.0;
    double amplitude = 0.0;
    double period = 1.0;
    double phase = 0.0;
    bool operator==(const Sinusoid&) const = default;
};

/// Right-continuous step function: values has one more entry than
/// breakpoints; values[i] applies on [breakpoints[i-1], breakpoints[i]).
struct PiecewiseConstant {
    std::vector<double> breakpoints;
    std::vector<double> values;
    bool operator==(const PiecewiseConstant&) const = default;
};

/// Linear interpolation through (t, value) knots; held flat outside the
/// knot range.
struct PiecewiseLinear {
    std::vector<std::pair<double, double>> knots;
    bool operator==(const PiecewiseLinear&) const = default;
};

struct Sum {
    std::vector<TimeFunction> terms;
    bool operator==(const Sum&) const;
};

struct Scaled {
    double factor = 1.0;
    std::shared_ptr<const TimeFunction> inner;
    bool operator==(const Scaled& other) const;
};

/// A piecewise-continuous, bounded coefficient function of time. Immutable
/// after construction; safe to share across threads.
struct TimeFunction {
    std::variant<Constant, Sinusoid, PiecewiseConstant, PiecewiseLinear, Sum,
                 Scaled>
        node;

    bool operator==(const TimeFunction&) const = default;
};

/// Validating factories. They throw std::invalid_argument on malformed
/// arguments (non-ascending breakpoints, non-positive period, ...).
TimeFunction constant(double value);
TimeFunction sinusoid(double mean, double amplitude, double period, double phase = 0.0);
TimeFunction piecewise_constant(std::vector<double> breakpoints, std::vector<double> values);
TimeFunction piecewise_linear(std::vector<std::pair<double, double>> knots);
TimeFunction sum(std::vector<TimeFunction> terms);
TimeFunction scaled(double factor, TimeFunction inner);

/// Guaranteed enclosure of the range of a function over an interval.
struct FunctionBounds {
    double lower = 0.0;
    double upper = 0.0;
    double t0 = 0.0;
    double t1 = 0.0;

    bool finite() const;
};

/// f(t) for t >= 0; throws std::domain_error for negative t. Piecewise
/// kinds are right-continuous at their breakpoints.
double eval(const TimeFunction& f, double t);

/// Adaptive quadrature of f over [t0, t1] (0 <= t0 <= t1) with absolute
/// tolerance `tol`; breakpoints of piecewise kinds are panel boundaries.
double integrate(const TimeFunction& f, double t0, double t1, double tol = 1e-10);

/// Per-segment analytic enclosure of {f(t) : t in [t0, t1]}.
FunctionBounds bounds_over(const TimeFunction& f, double t0, double t1);

/// Appends the non-smooth abscissae of f lying strictly inside (t0, t1).
void collect_breakpoints(const TimeFunction& f, double t0, double t1,
                         std::vector<double>& out);

/// Sorted unique breakpoints of several functions inside (t0, t1).
std::vector<double> merged_breakpoints(std::initializer_list<const TimeFunction*> fs,
                                       double t0, double t1);

} // namespace sisim
