#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sisim/errors.hpp"
#include "sisim/impulse.hpp"
#include "sisim/model.hpp"
#include "sisim/thresholds.hpp"
#include "sisim/trajectory.hpp"

namespace sisim {

struct Tolerances {
    double rel = 1e-8;
    double abs = 1e-10;
    bool operator==(const Tolerances&) const = default;
};

/// Which monitor checks a run executes ("all" or an explicit id list).
struct CheckSelection {
    bool all = true;
    std::vector<std::string> ids;

    bool enabled(const std::string& id) const;
    bool operator==(const CheckSelection&) const = default;
};

struct AnalysisOptions {
    std::optional<double> capacity_period; // probe period for the periodicity test
    std::optional<std::pair<double, double>> tail_window; // limit-estimation window
    int probe_count = 10;                  // oracle/periodicity probe times
    bool operator==(const AnalysisOptions&) const = default;
};

/// One full model instance: coefficients, initial state, culling schedule,
/// horizon and solver/monitor configuration.
struct Scenario {
    std::string name;
    ModelParams params;
    State initial;
    ImpulseSchedule schedule;
    double horizon = 10.0;
    Tolerances tolerances;
    std::vector<double> output_grid;
    bool allow_negative_gamma = false;
    Thresholds thresholds;
    CheckSelection checks;
    AnalysisOptions analysis;

    double neg_tol() const { return thresholds.neg_tol_scale * (1.0 + initial.N()); }
    bool operator==(const Scenario&) const = default;
};

/// Step-size underflow; carries whatever was integrated before the stall so
/// partial artifacts can still be written.
class IntegrationAbort : public IntegrationError {
public:
    IntegrationAbort(const std::string& what, double last_time,
                     std::shared_ptr<Trajectory> partial)
        : IntegrationError(what, last_time), partial_(std::move(partial)) {}

    const std::shared_ptr<Trajectory>& partial() const { return partial_; }

private:
    std::shared_ptr<Trajectory> partial_;
};

/// Adaptive embedded Runge-Kutta 5(4) integration of the model over
/// [0, horizon]. Impulse times and coefficient breakpoints are mandatory
/// mesh points; each impulse contributes a pre- and a post-sample and the
/// integration restarts from the culled state. No clamping is applied to
/// the state: a component dipping below -neg_tol is recorded as a
/// diagnostic, never repaired.
Trajectory integrate(const Scenario& scenario);

} // namespace sisim
