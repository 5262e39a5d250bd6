#include "sisim/impulse.hpp"

#include <sstream>
#include <stdexcept>

namespace sisim {

std::vector<ScheduleViolation> validate_schedule(const ImpulseSchedule& schedule) {
    std::vector<ScheduleViolation> violations;
    auto flag = [&](std::size_t k, const std::string& msg) {
        violations.push_back({k, msg});
    };
    if (!(schedule.min_gap > 0.0))
        flag(0, "minimum impulse spacing must be positive");
    for (std::size_t k = 0; k < schedule.events.size(); ++k) {
        const ImpulseEvent& e = schedule.events[k];
        std::ostringstream msg;
        if (e.t < 0.0) {
            msg << "impulse time " << e.t << " is negative";
            flag(k, msg.str());
        } else if (k > 0) {
            const double gap = e.t - schedule.events[k - 1].t;
            if (gap < schedule.min_gap) {
                msg << "impulse gap " << gap << " at event " << k
                    << " is below the minimum spacing " << schedule.min_gap;
                flag(k, msg.str());
            }
        }
        if (e.p < 0.0 || e.p > 1.0) {
            std::ostringstream m;
            m << "susceptible culling fraction " << e.p << " at event " << k
              << " is outside [0, 1]";
            flag(k, m.str());
        }
        if (e.q < 0.0 || e.q > 1.0) {
            std::ostringstream m;
            m << "infected culling fraction " << e.q << " at event " << k
              << " is outside [0, 1]";
            flag(k, m.str());
        }
    }
    return violations;
}

State apply_impulse(const State& state, double p, double q) {
    if (p < 0.0 || p > 1.0 || q < 0.0 || q > 1.0)
        throw std::invalid_argument("culling fractions must lie in [0, 1]");
    return State{(1.0 - p) * state.S, (1.0 - q) * state.I};
}

} // namespace sisim
