#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sisim/impulse.hpp"
#include "sisim/model.hpp"

namespace sisim {

enum class SampleEvent : std::uint8_t { none, pre, post };

const char* to_string(SampleEvent e);

struct Sample {
    double t = 0.0;
    double S = 0.0;
    double I = 0.0;
    double N = 0.0;
    SampleEvent event = SampleEvent::none;
};

struct ImpulseRecord {
    double t = 0.0;
    State before;
    State after;
    double p = 0.0;
    double q = 0.0;
};

struct StepStats {
    std::int64_t accepted = 0;
    std::int64_t rejected = 0;
    double min_step = 0.0;
    double max_step = 0.0;
};

/// Quartic dense-output polynomial of one accepted step, evaluated with the
/// nested Horner form u(theta) = c1 + theta(c2 + (1-theta)(c3 + theta(c4 + (1-theta)c5))).
struct DenseSegment {
    double t0 = 0.0;
    double t1 = 0.0;
    std::array<double, 5> cS{};
    std::array<double, 5> cI{};

    State eval(double t) const;
};

/// Result of one integration run: samples at accepted steps, the requested
/// output grid and both sides of every impulse, plus the dense segments the
/// samples were drawn from (used by the closed-form reconstructions).
struct Trajectory {
    std::vector<Sample> samples;
    std::vector<ImpulseRecord> impulse_records;
    StepStats step_stats;
    std::vector<DenseSegment> segments;
    std::vector<std::string> diagnostics;

    State initial;
    double horizon = 0.0;
    double neg_tol = 0.0;
    double min_S = 0.0;
    double min_I = 0.0;

    /// Dense-output state at t. At an impulse time the value of the later
    /// segment (the post-impulse state) is returned.
    State interpolate(double t) const;

    /// Segment boundaries (accepted-step endpoints) within [a, b]; these
    /// bracket every kink of the interpolant.
    std::vector<double> segment_boundaries(double a, double b) const;

    /// Impulse times in (a, b].
    std::vector<double> impulse_times_between(double a, double b) const;

    double end_time() const;

    /// CSV rows `t,S,I,N,event`; both sides of an impulse share t.
    void write_csv(std::ostream& os) const;
};

} // namespace sisim
