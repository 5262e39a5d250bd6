#include "sisim/time_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sisim/quadrature.hpp"

namespace sisim {

bool Sum::operator==(const Sum& other) const { return terms == other.terms; }

bool Scaled::operator==(const Scaled& other) const {
    if (factor != other.factor) return false;
    if (inner == other.inner) return true;
    if (!inner || !other.inner) return false;
    return *inner == *other.inner;
}

TimeFunction constant(double value) { return TimeFunction{Constant{value}}; }

TimeFunction sinusoid(double mean, double amplitude, double period, double phase) {
    if (!(period > 0.0))
        throw std::invalid_argument("sinusoid period must be positive");
    return TimeFunction{Sinusoid{mean, amplitude, period, phase}};
}

TimeFunction piecewise_constant(std::vector<double> breakpoints,
                                std::vector<double> values) {
    if (values.size() != breakpoints.size() + 1)
        throw std::invalid_argument(
            "piecewise_constant needs exactly one more value than breakpoints");
    if (!std::is_sorted(breakpoints.begin(), breakpoints.end(),
                        std::less_equal<double>()))
        throw std::invalid_argument(
            "piecewise_constant breakpoints must be strictly increasing");
    return TimeFunction{PiecewiseConstant{std::move(breakpoints), std::move(values)}};
}

TimeFunction piecewise_linear(std::vector<std::pair<double, double>> knots) {
    if (knots.empty())
        throw std::invalid_argument("piecewise_linear needs at least one knot");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i - 1].first < knots[i].first))
            throw std::invalid_argument(
                "piecewise_linear knot abscissae must be strictly increasing");
    return TimeFunction{PiecewiseLinear{std::move(knots)}};
}

TimeFunction sum(std::vector<TimeFunction> terms) {
    if (terms.empty()) throw std::invalid_argument("sum needs at least one term");
    return TimeFunction{Sum{std::move(terms)}};
}

TimeFunction scaled(double factor, TimeFunction inner) {
    return TimeFunction{
        Scaled{factor, std::make_shared<const TimeFunction>(std::move(inner))}};
}

bool FunctionBounds::finite() const {
    return std::isfinite(lower) && std::isfinite(upper);
}

namespace {

double eval_at(const TimeFunction& f, double t);

struct EvalVisitor {
    double t;

    double operator()(const Constant& c) const { return c.value; }

    double operator()(const Sinusoid& s) const {
        return s.mean +
               s.amplitude * std::sin(2.0 * std::numbers::pi * t / s.period + s.phase);
    }

    double operator()(const PiecewiseConstant& p) const {
        auto it = std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), t);
        return p.values[static_cast<std::size_t>(it - p.breakpoints.begin())];
    }

    double operator()(const PiecewiseLinear& p) const {
        if (t <= p.knots.front().first) return p.knots.front().second;
        if (t >= p.knots.back().first) return p.knots.back().second;
        auto it = std::upper_bound(
            p.knots.begin(), p.knots.end(), t,
            [](double x, const auto& k) { return x < k.first; });
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double w = (t - lo.first) / (hi.first - lo.first);
        return lo.second + w * (hi.second - lo.second);
    }

    double operator()(const Sum& s) const {
        double acc = 0.0;
        for (const auto& term : s.terms) acc += eval_at(term, t);
        return acc;
    }

    double operator()(const Scaled& s) const { return s.factor * eval_at(*s.inner, t); }
};

double eval_at(const TimeFunction& f, double t) {
    return std::visit(EvalVisitor{t}, f.node);
}

// Extrema of a sinusoid restricted to [t0, t1]: endpoint values plus any
// interior critical points of sin.
FunctionBounds sinusoid_bounds(const Sinusoid& s, double t0, double t1) {
    const double w = 2.0 * std::numbers::pi / s.period;
    auto value = [&](double t) { return s.mean + s.amplitude * std::sin(w * t + s.phase); };
    double lo = std::min(value(t0), value(t1));
    double hi = std::max(value(t0), value(t1));
    if (t1 - t0 >= s.period) {
        lo = s.mean - std::abs(s.amplitude);
        hi = s.mean + std::abs(s.amplitude);
        return {lo, hi, t0, t1};
    }
    // critical points: w*t + phase = pi/2 + k*pi
    const double first_k =
        std::ceil((w * t0 + s.phase - std::numbers::pi / 2.0) / std::numbers::pi);
    for (double k = first_k;; k += 1.0) {
        const double tc = (std::numbers::pi / 2.0 + k * std::numbers::pi - s.phase) / w;
        if (tc > t1) break;
        if (tc >= t0) {
            const double v = value(tc);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return {lo, hi, t0, t1};
}

struct BoundsVisitor {
    double t0, t1;

    FunctionBounds operator()(const Constant& c) const {
        return {c.value, c.value, t0, t1};
    }

    FunctionBounds operator()(const Sinusoid& s) const {
        return sinusoid_bounds(s, t0, t1);
    }

    FunctionBounds operator()(const PiecewiseConstant& p) const {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        auto consider = [&](double v) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        };
        // value segments overlapping [t0, t1]
        consider(EvalVisitor{t0}(p));
        consider(EvalVisitor{t1}(p));
        for (std::size_t i = 0; i < p.breakpoints.size(); ++i)
            if (p.breakpoints[i] > t0 && p.breakpoints[i] <= t1) consider(p.values[i + 1]);
        return {lo, hi, t0, t1};
    }

    FunctionBounds operator()(const PiecewiseLinear& p) const {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        auto consider = [&](double v) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        };
        consider(EvalVisitor{t0}(p));
        consider(EvalVisitor{t1}(p));
        for (const auto& [x, v] : p.knots)
            if (x > t0 && x < t1) consider(v);
        return {lo, hi, t0, t1};
    }

    FunctionBounds operator()(const Sum& s) const {
        double lo = 0.0, hi = 0.0;
        for (const auto& term : s.terms) {
            const FunctionBounds b = std::visit(BoundsVisitor{t0, t1}, term.node);
            lo += b.lower;
            hi += b.upper;
        }
        return {lo, hi, t0, t1};
    }

    FunctionBounds operator()(const Scaled& s) const {
        FunctionBounds b = std::visit(BoundsVisitor{t0, t1}, s.inner->node);
        double lo = s.factor * b.lower;
        double hi = s.factor * b.upper;
        if (lo > hi) std::swap(lo, hi);
        return {lo, hi, t0, t1};
    }
};

struct BreakpointVisitor {
    double t0, t1;
    std::vector<double>* out;

    void operator()(const Constant&) const {}
    void operator()(const Sinusoid&) const {}

    void operator()(const PiecewiseConstant& p) const {
        for (double b : p.breakpoints)
            if (b > t0 && b < t1) out->push_back(b);
    }

    void operator()(const PiecewiseLinear& p) const {
        for (const auto& [x, v] : p.knots) {
            (void)v;
            if (x > t0 && x < t1) out->push_back(x);
        }
    }

    void operator()(const Sum& s) const {
        for (const auto& term : s.terms) std::visit(*this, term.node);
    }

    void operator()(const Scaled& s) const { std::visit(*this, s.inner->node); }
};

} // namespace

double eval(const TimeFunction& f, double t) {
    if (t < 0.0)
        throw std::domain_error("time functions are defined for t >= 0 only");
    return eval_at(f, t);
}

double integrate(const TimeFunction& f, double t0, double t1, double tol) {
    if (t0 < 0.0 || t1 < t0)
        throw std::domain_error("integrate requires 0 <= t0 <= t1");
    if (t0 == t1) return 0.0;
    std::vector<double> breaks;
    collect_breakpoints(f, t0, t1, breaks);
    return integrate_adaptive([&f](double t) { return eval_at(f, t); }, t0, t1,
                              breaks, tol);
}

FunctionBounds bounds_over(const TimeFunction& f, double t0, double t1) {
    if (t1 < t0) throw std::domain_error("bounds_over requires t0 <= t1");
    return std::visit(BoundsVisitor{t0, t1}, f.node);
}

void collect_breakpoints(const TimeFunction& f, double t0, double t1,
                         std::vector<double>& out) {
    std::visit(BreakpointVisitor{t0, t1, &out}, f.node);
}

std::vector<double> merged_breakpoints(std::initializer_list<const TimeFunction*> fs,
                                       double t0, double t1) {
    std::vector<double> out;
    for (const TimeFunction* f : fs) collect_breakpoints(*f, t0, t1, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace sisim
