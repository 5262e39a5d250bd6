#include "sisim/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sisim {

bool CheckSelection::enabled(const std::string& id) const {
    if (all) return true;
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - b_hat (5th minus embedded 4th order weights)
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct Vec2 {
    double s = 0.0, i = 0.0;
};

Vec2 axpy(const Vec2& y, double h, double w1, const Vec2& k1) {
    return {y.s + h * w1 * k1.s, y.i + h * w1 * k1.i};
}

class Stepper {
public:
    Stepper(const Scenario& scenario, Trajectory& traj)
        : sc_(scenario), traj_(traj) {}

    void record_sample(double t, const State& y, SampleEvent ev) {
        traj_.samples.push_back({t, y.S, y.I, y.S + y.I, ev});
        if (y.S < traj_.min_S) traj_.min_S = y.S;
        if (y.I < traj_.min_I) traj_.min_I = y.I;
        if (y.S < -traj_.neg_tol && !flagged_S_) {
            flagged_S_ = true;
            std::ostringstream msg;
            msg << "susceptible dipped to " << y.S << " at t=" << t
                << " (below -" << traj_.neg_tol << ")";
            traj_.diagnostics.push_back(msg.str());
        }
        if (y.I < -traj_.neg_tol && !flagged_I_) {
            flagged_I_ = true;
            std::ostringstream msg;
            msg << "infected dipped to " << y.I << " at t=" << t << " (below -"
                << traj_.neg_tol << ")";
            traj_.diagnostics.push_back(msg.str());
        }
    }

    // Integrate from (t, y) to t_end; the right hand side is smooth on the
    // open interval. Appends samples and dense segments. The proposed step
    // size persists across mesh intervals; steps truncated to land exactly
    // on t_end do not shrink the proposal.
    State advance(double t, State y, double t_end) {
        if (h_prop_ <= 0.0) h_prop_ = suggest_initial_step(t, y, t_end - t);
        while (t < t_end) {
            const double h_floor =
                16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0);
            if (h_prop_ < h_floor) {
                auto partial = std::make_shared<Trajectory>(traj_);
                std::ostringstream msg;
                msg << "step size underflow at t=" << t
                    << " (possible stiffness); last accepted time " << t;
                throw IntegrationAbort(msg.str(), t, partial);
            }
            double h = h_prop_;
            bool hit_end = false;
            if (t + h >= t_end) {
                h = t_end - t;
                hit_end = true;
            }

            const Vec2 yv{y.S, y.I};
            Vec2 k[7];
            k[0] = rhs(t, yv);
            k[1] = rhs(t + c2 * h, stage(yv, h, {a21}, k));
            k[2] = rhs(t + c3 * h, stage(yv, h, {a31, a32}, k));
            k[3] = rhs(t + c4 * h, stage(yv, h, {a41, a42, a43}, k));
            k[4] = rhs(t + c5 * h, stage(yv, h, {a51, a52, a53, a54}, k));
            k[5] = rhs(t + h, stage(yv, h, {a61, a62, a63, a64, a65}, k));
            Vec2 ynew;
            ynew.s = yv.s + h * (b1 * k[0].s + b3 * k[2].s + b4 * k[3].s +
                                 b5 * k[4].s + b6 * k[5].s);
            ynew.i = yv.i + h * (b1 * k[0].i + b3 * k[2].i + b4 * k[3].i +
                                 b5 * k[4].i + b6 * k[5].i);
            k[6] = rhs(t + h, ynew);

            const double err_s = h * (e1 * k[0].s + e3 * k[2].s + e4 * k[3].s +
                                      e5 * k[4].s + e6 * k[5].s + e7 * k[6].s);
            const double err_i = h * (e1 * k[0].i + e3 * k[2].i + e4 * k[3].i +
                                      e5 * k[4].i + e6 * k[5].i + e7 * k[6].i);
            const double sc_s = sc_.tolerances.abs +
                                sc_.tolerances.rel * std::max(std::abs(yv.s), std::abs(ynew.s));
            const double sc_i = sc_.tolerances.abs +
                                sc_.tolerances.rel * std::max(std::abs(yv.i), std::abs(ynew.i));
            const double err = std::sqrt(
                0.5 * ((err_s / sc_s) * (err_s / sc_s) + (err_i / sc_i) * (err_i / sc_i)));

            if (!std::isfinite(err)) {
                ++traj_.step_stats.rejected;
                h_prop_ = h * 0.1;
                last_rejected_ = true;
                continue;
            }
            if (err <= 1.0) {
                const double t_next = hit_end ? t_end : t + h;
                push_segment(t, t_next, yv, ynew, k);
                t = t_next;
                y = State{ynew.s, ynew.i};
                record_sample(t, y, SampleEvent::none);
                ++traj_.step_stats.accepted;
                if (traj_.step_stats.min_step == 0.0 || h < traj_.step_stats.min_step)
                    traj_.step_stats.min_step = h;
                traj_.step_stats.max_step = std::max(traj_.step_stats.max_step, h);
                const double fac =
                    std::min(last_rejected_ ? 1.0 : 5.0,
                             std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
                if (!hit_end)
                    h_prop_ = h * fac;
                // a truncated step keeps the previous proposal
                last_rejected_ = false;
            } else {
                ++traj_.step_stats.rejected;
                h_prop_ = h * std::max(0.1, 0.9 * std::pow(err, -0.2));
                last_rejected_ = true;
            }
        }
        return y;
    }

private:
    Vec2 rhs(double t, const Vec2& y) const {
        const Derivative d = vector_field(sc_.params, t, State{y.s, y.i});
        return {d.dS, d.dI};
    }

    Vec2 stage(const Vec2& y, double h, std::initializer_list<double> ws,
               const Vec2 k[7]) const {
        Vec2 acc = y;
        std::size_t j = 0;
        for (double w : ws) {
            acc = axpy(acc, h, w, k[j]);
            ++j;
        }
        return acc;
    }

    void push_segment(double t, double t_next, const Vec2& y, const Vec2& ynew,
                      const Vec2 k[7]) {
        const double h = t_next - t;
        DenseSegment seg;
        seg.t0 = t;
        seg.t1 = t_next;
        auto fill = [&](double y0, double y1, auto comp) {
            const double ydiff = y1 - y0;
            const double bspl = h * comp(k[0]) - ydiff;
            std::array<double, 5> c;
            c[0] = y0;
            c[1] = ydiff;
            c[2] = bspl;
            c[3] = ydiff - h * comp(k[6]) - bspl;
            c[4] = h * (d1 * comp(k[0]) + d3 * comp(k[2]) + d4 * comp(k[3]) +
                        d5 * comp(k[4]) + d6 * comp(k[5]) + d7 * comp(k[6]));
            return c;
        };
        seg.cS = fill(y.s, ynew.s, [](const Vec2& v) { return v.s; });
        seg.cI = fill(y.i, ynew.i, [](const Vec2& v) { return v.i; });
        traj_.segments.push_back(seg);
    }

    double suggest_initial_step(double t, const State& y, double span) const {
        const Vec2 f0 = rhs(t, {y.S, y.I});
        const double sc_s = sc_.tolerances.abs + sc_.tolerances.rel * std::abs(y.S);
        const double sc_i = sc_.tolerances.abs + sc_.tolerances.rel * std::abs(y.I);
        const double d0 = std::sqrt(0.5 * ((y.S / sc_s) * (y.S / sc_s) +
                                           (y.I / sc_i) * (y.I / sc_i)));
        const double d1v = std::sqrt(0.5 * ((f0.s / sc_s) * (f0.s / sc_s) +
                                            (f0.i / sc_i) * (f0.i / sc_i)));
        double h0 = (d0 < 1e-5 || d1v < 1e-5) ? 1e-6 * std::max(span, 1.0)
                                              : 0.01 * d0 / d1v;
        return std::min(h0, span);
    }

    const Scenario& sc_;
    Trajectory& traj_;
    bool flagged_S_ = false;
    bool flagged_I_ = false;
    bool last_rejected_ = false;
    double h_prop_ = 0.0;
};

} // namespace

Trajectory integrate(const Scenario& scenario) {
    if (!(scenario.horizon > 0.0) || !std::isfinite(scenario.horizon))
        throw std::invalid_argument("horizon must be positive and finite");
    if (scenario.initial.S < 0.0 || scenario.initial.I < 0.0)
        throw std::invalid_argument("initial state must be nonnegative");
    if (!validate_schedule(scenario.schedule).empty())
        throw std::invalid_argument("impulse schedule is invalid");

    Trajectory traj;
    traj.initial = scenario.initial;
    traj.horizon = scenario.horizon;
    traj.neg_tol = scenario.neg_tol();
    traj.min_S = scenario.initial.S;
    traj.min_I = scenario.initial.I;

    const ModelParams& mp = scenario.params;
    std::vector<double> mesh = merged_breakpoints(
        {&mp.r, &mp.d, &mp.gamma, &mp.beta, &mp.delta1, &mp.delta2, &mp.K, &mp.p0},
        0.0, scenario.horizon);
    for (const ImpulseEvent& e : scenario.schedule.events)
        if (e.t > 0.0 && e.t <= scenario.horizon) mesh.push_back(e.t);
    mesh.push_back(0.0);
    mesh.push_back(scenario.horizon);
    std::sort(mesh.begin(), mesh.end());
    mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());

    auto impulse_at = [&](double t) -> const ImpulseEvent* {
        for (const ImpulseEvent& e : scenario.schedule.events)
            if (e.t == t) return &e;
        return nullptr;
    };

    Stepper stepper(scenario, traj);
    State y = scenario.initial;

    if (const ImpulseEvent* e0 = impulse_at(0.0)) {
        stepper.record_sample(0.0, y, SampleEvent::pre);
        const State culled = apply_impulse(y, e0->p, e0->q);
        traj.impulse_records.push_back({0.0, y, culled, e0->p, e0->q});
        y = culled;
        stepper.record_sample(0.0, y, SampleEvent::post);
    } else {
        stepper.record_sample(0.0, y, SampleEvent::none);
    }

    for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
        const double t_end = mesh[i + 1];
        y = stepper.advance(mesh[i], y, t_end);
        if (const ImpulseEvent* e = impulse_at(t_end)) {
            traj.samples.back().event = SampleEvent::pre;
            const State culled = apply_impulse(y, e->p, e->q);
            traj.impulse_records.push_back({t_end, y, culled, e->p, e->q});
            y = culled;
            stepper.record_sample(t_end, y, SampleEvent::post);
        }
    }

    // merge requested output-grid samples via dense output
    if (!scenario.output_grid.empty()) {
        std::vector<Sample> merged;
        merged.reserve(traj.samples.size() + scenario.output_grid.size());
        std::vector<double> grid = scenario.output_grid;
        std::sort(grid.begin(), grid.end());
        std::size_t gi = 0;
        auto emit_grid_before = [&](double t_next) {
            while (gi < grid.size() && grid[gi] < t_next) {
                const double tg = grid[gi];
                ++gi;
                if (tg < 0.0 || tg > scenario.horizon) continue;
                if (!merged.empty() && merged.back().t == tg) continue;
                const State s = traj.interpolate(tg);
                merged.push_back({tg, s.S, s.I, s.S + s.I, SampleEvent::none});
                if (s.S < traj.min_S) traj.min_S = s.S;
                if (s.I < traj.min_I) traj.min_I = s.I;
            }
        };
        for (const Sample& s : traj.samples) {
            emit_grid_before(s.t);
            while (gi < grid.size() && grid[gi] == s.t) ++gi; // already sampled
            merged.push_back(s);
        }
        emit_grid_before(std::numeric_limits<double>::infinity());
        traj.samples = std::move(merged);
    }

    return traj;
}

} // namespace sisim
