#pragma once

#include <string>
#include <vector>

#include "sisim/model.hpp"

namespace sisim {

/// One scheduled culling event: at time t the susceptible population is cut
/// by fraction p and the infected one by fraction q (both in [0, 1]).
struct ImpulseEvent {
    double t = 0.0;
    double p = 0.0;
    double q = 0.0;

    bool zero_effect() const { return p == 0.0 && q == 0.0; }
    bool operator==(const ImpulseEvent&) const = default;
};

struct ImpulseSchedule {
    std::vector<ImpulseEvent> events; // ascending times
    double min_gap = 1.0;             // required spacing T > 0

    bool empty() const { return events.empty(); }
    bool operator==(const ImpulseSchedule&) const = default;
};

struct ScheduleViolation {
    std::size_t index = 0;
    std::string message;
};

/// Checks ordering, the minimum gap, and the [0,1] range of the culling
/// fractions. Violations are data, not errors.
std::vector<ScheduleViolation> validate_schedule(const ImpulseSchedule& schedule);

/// (S, I) -> ((1-p)S, (1-q)I). Total population never increases; p = q = 1
/// extinguishes both components exactly.
State apply_impulse(const State& state, double p, double q);

} // namespace sisim
