#include "corpus.hpp"

#include <algorithm>
#include <cmath>

namespace corpus {

using namespace sisim;

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

TimeFunction random_fn(Rng& rng, double lo, double hi, double horizon, int depth) {
    const int kind = uniform_int(rng, 0, depth >= 2 ? 3 : 5);
    switch (kind) {
        case 1: { // sinusoid inside [lo, hi]
            const double mid = 0.5 * (lo + hi);
            const double mean = uniform(rng, lo + 0.25 * (hi - lo), hi - 0.25 * (hi - lo));
            const double amp_cap = std::min(mean - lo, hi - mean);
            const double amp = uniform(rng, 0.0, amp_cap);
            const double period = uniform(rng, std::max(0.5, horizon / 20.0), horizon);
            (void)mid;
            return sinusoid(mean, amp, period, uniform(rng, 0.0, 6.28));
        }
        case 2: { // piecewise constant
            const int nb = uniform_int(rng, 1, 3);
            std::vector<double> breaks;
            for (int i = 0; i < nb; ++i)
                breaks.push_back(uniform(rng, 0.05 * horizon, 0.95 * horizon));
            std::sort(breaks.begin(), breaks.end());
            breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
            std::vector<double> values;
            for (std::size_t i = 0; i <= breaks.size(); ++i)
                values.push_back(uniform(rng, lo, hi));
            return piecewise_constant(std::move(breaks), std::move(values));
        }
        case 3: { // piecewise linear
            const int nk = uniform_int(rng, 2, 4);
            std::vector<std::pair<double, double>> knots;
            double t = uniform(rng, 0.0, 0.2 * horizon);
            for (int i = 0; i < nk; ++i) {
                knots.emplace_back(t, uniform(rng, lo, hi));
                t += uniform(rng, 0.1 * horizon, 0.4 * horizon);
            }
            return piecewise_linear(std::move(knots));
        }
        case 4: { // sum of two halves of the range
            const double split = uniform(rng, 0.3, 0.7);
            const double mid = lo + split * (hi - lo);
            return sum({random_fn(rng, lo, mid, horizon, depth + 1),
                        random_fn(rng, 0.0, hi - mid, horizon, depth + 1)});
        }
        case 5: { // scaled
            const double factor = uniform(rng, 0.5, 2.0);
            return scaled(factor,
                          random_fn(rng, lo / factor, hi / factor, horizon, depth + 1));
        }
        default: return constant(uniform(rng, lo, hi));
    }
}

ImpulseSchedule random_schedule(Rng& rng, double horizon) {
    ImpulseSchedule schedule;
    schedule.min_gap = uniform(rng, 0.5, 2.0);
    double t = uniform(rng, 0.2, 1.5);
    while (t < horizon) {
        ImpulseEvent e;
        e.t = t;
        const double roll = uniform(rng, 0.0, 1.0);
        if (roll < 0.1) {
            e.p = 0.0;
            e.q = 0.0;
        } else if (roll < 0.2) {
            e.p = 1.0;
            e.q = uniform(rng, 0.0, 1.0);
        } else {
            e.p = uniform(rng, 0.0, 1.0);
            e.q = uniform(rng, 0.0, 1.0);
        }
        schedule.events.push_back(e);
        t += schedule.min_gap + uniform(rng, 0.0, 2.0);
    }
    return schedule;
}

Scenario random_positivity_scenario(Rng& rng, bool with_impulses) {
    Scenario sc;
    sc.horizon = uniform(rng, 5.0, 50.0);
    const double H = sc.horizon;

    ModelParams& mp = sc.params;
    mp.eps0 = 1e-6;
    mp.K = random_fn(rng, 20.0, 150.0, H);
    const double K_low = bounds_over(mp.K, 0.0, H).lower;
    const double p0_cap = 0.5 * (K_low - mp.eps0);
    mp.p0 = p0_cap > 0.0 ? random_fn(rng, -p0_cap, p0_cap, H) : constant(0.0);
    const double p_up = bounds_over(sum({mp.K, mp.p0}), 0.0, H).upper;

    mp.r = random_fn(rng, 0.0, 1.2, H);
    mp.d = random_fn(rng, 0.2, 1.5, H);
    mp.gamma = random_fn(rng, 0.0, 1.0, H);
    mp.delta2 = random_fn(rng, 0.0, 2.0, H);

    sc.initial.S = uniform(rng, 0.0, 100.0);
    sc.initial.I = uniform(rng, 0.0, 100.0);
    if (uniform(rng, 0.0, 1.0) < 0.15) sc.initial.I = 0.0;
    if (uniform(rng, 0.0, 1.0) < 0.08) sc.initial.S = 0.0;
    if (uniform(rng, 0.0, 1.0) < 0.05) {
        sc.initial.S = 0.0;
        sc.initial.I = 0.0;
    }

    if (uniform(rng, 0.0, 1.0) < 0.3) {
        // infection-free transmission; susceptible growth may be brisk
        mp.beta = constant(0.0);
        mp.delta1 = random_fn(rng, 0.0, 2.0, H);
    } else {
        // keep the infected growth exponent bounded: beta*S_max stays close
        // to the death+recovery floor
        mp.delta1 = random_fn(rng, 0.2, 2.0, H);
        const double d_low = bounds_over(mp.d, 0.0, H).lower;
        const double g_low = bounds_over(mp.gamma, 0.0, H).lower;
        const double delta1_low = bounds_over(mp.delta1, 0.0, H).lower;
        const double S_max_est =
            std::max({sc.initial.S, sc.initial.I, p_up / std::max(delta1_low, 0.05)});
        const double beta_cap = (d_low + g_low + 0.4) / S_max_est;
        mp.beta = random_fn(rng, 0.0, beta_cap, H);
    }

    if (with_impulses) sc.schedule = random_schedule(rng, H);
    sc.tolerances = {1e-8, 1e-10};
    const int n_grid = 50;
    for (int i = 0; i <= n_grid; ++i)
        sc.output_grid.push_back(std::min(H, H * static_cast<double>(i) / n_grid));
    return sc;
}

Scenario random_oracle_scenario(Rng& rng) {
    Scenario sc;
    sc.horizon = uniform(rng, 4.0, 10.0);
    const double H = sc.horizon;

    ModelParams& mp = sc.params;
    mp.eps0 = 1e-6;
    mp.K = random_fn(rng, 60.0, 140.0, H);
    mp.p0 = constant(0.0);
    mp.r = random_fn(rng, 0.1, 1.0, H);
    mp.d = random_fn(rng, 0.3, 1.0, H);
    mp.gamma = random_fn(rng, 0.1, 0.8, H);
    mp.delta1 = random_fn(rng, 0.4, 1.5, H);
    mp.delta2 = random_fn(rng, 0.0, 1.5, H);

    sc.initial.S = uniform(rng, 10.0, 80.0);
    sc.initial.I = uniform(rng, 0.5, 30.0);

    const double d_low = bounds_over(mp.d, 0.0, H).lower;
    const double g_low = bounds_over(mp.gamma, 0.0, H).lower;
    const double delta1_low = bounds_over(mp.delta1, 0.0, H).lower;
    const double p_up = bounds_over(sum({mp.K, mp.p0}), 0.0, H).upper;
    const double S_max_est = std::max(sc.initial.S + sc.initial.I, p_up / delta1_low);
    const double beta_cap = (d_low + g_low + 0.3) / S_max_est;
    mp.beta = random_fn(rng, 0.0, beta_cap, H);

    sc.tolerances = {1e-10, 1e-12};
    for (int i = 0; i <= 40; ++i)
        sc.output_grid.push_back(std::min(H, H * static_cast<double>(i) / 40.0));
    return sc;
}

Scenario random_invariant_scenario(Rng& rng) {
    Scenario sc;
    sc.horizon = uniform(rng, 5.0, 20.0);
    const double H = sc.horizon;

    ModelParams& mp = sc.params;
    mp.eps0 = 1e-6;
    const double K = uniform(rng, 50.0, 200.0);
    mp.K = constant(K);
    mp.p0 = constant(0.0);
    mp.delta1 = random_fn(rng, 0.3, 2.0, H);
    mp.delta2 = random_fn(rng, 0.3, 2.0, H);
    mp.r = random_fn(rng, 0.0, 1.5, H);
    mp.d = random_fn(rng, 0.0, 1.0, H);
    mp.gamma = random_fn(rng, 0.0, 1.0, H);

    const double delta_m = std::min(bounds_over(mp.delta1, 0.0, H).lower,
                                    bounds_over(mp.delta2, 0.0, H).lower);
    const double bound = K / delta_m;
    const double N0 = uniform(rng, 0.05, 0.98) * bound;
    const double s_frac = uniform(rng, 0.0, 1.0);
    sc.initial.S = s_frac * N0;
    sc.initial.I = N0 - sc.initial.S;

    const double d_low = bounds_over(mp.d, 0.0, H).lower;
    const double g_low = bounds_over(mp.gamma, 0.0, H).lower;
    const double beta_cap = (d_low + g_low + 0.3) / bound;
    mp.beta = random_fn(rng, 0.0, beta_cap, H);

    sc.tolerances = {1e-12, 1e-13};
    for (int i = 0; i <= 50; ++i)
        sc.output_grid.push_back(std::min(H, H * static_cast<double>(i) / 50.0));
    return sc;
}

LimitingParams random_admissible_limits(Rng& rng) {
    for (;;) {
        LimitingParams lim;
        lim.r_star = uniform(rng, 0.2, 2.0);
        lim.d_star = uniform(rng, 0.1, 1.0);
        lim.gamma_star = uniform(rng, 0.0, 1.0);
        lim.beta_star = uniform(rng, 0.02, 0.5);
        lim.delta1_star = uniform(rng, 0.05, 2.0);
        lim.delta2_star = uniform(rng, 0.05, 2.0);
        lim.p_star = uniform(rng, 20.0, 300.0);

        const double S2 = (lim.d_star + lim.gamma_star) / lim.beta_star;
        const double denom = lim.d_star * lim.p_star + lim.r_star * lim.delta2_star * S2;
        if (std::abs(denom) < 0.05 * lim.d_star * lim.p_star) continue;
        const double I2 = lim.r_star * S2 * (lim.p_star - lim.delta1_star * S2) / denom;
        if (!(I2 > 0.1) || !(S2 > 0.1) || S2 > 5.0 * lim.p_star || I2 > 10.0 * lim.p_star)
            continue;
        return lim;
    }
}

Scenario scenario_from_limits(const LimitingParams& lim, State initial,
                              double horizon) {
    Scenario sc;
    sc.horizon = horizon;
    sc.params.r = constant(lim.r_star);
    sc.params.d = constant(lim.d_star);
    sc.params.gamma = constant(lim.gamma_star);
    sc.params.beta = constant(lim.beta_star);
    sc.params.delta1 = constant(lim.delta1_star);
    sc.params.delta2 = constant(lim.delta2_star);
    sc.params.K = constant(lim.p_star);
    sc.params.p0 = constant(0.0);
    sc.params.eps0 = std::min(1e-6, 0.5 * lim.p_star);
    sc.initial = initial;
    sc.tolerances = {1e-10, 1e-12};
    for (int i = 0; i <= 50; ++i)
        sc.output_grid.push_back(std::min(horizon, horizon * static_cast<double>(i) / 50.0));
    return sc;
}

} // namespace corpus
