#pragma once

namespace sisim {

/// Numeric thresholds standing in for the exact equalities and t -> infinity
/// limits of the underlying statements; all configurable per scenario.
struct Thresholds {
    double class_tol = 1e-9;   // half-width for equality tests in classification
    double limit_tol = 1e-6;   // max tail oscillation accepted as a finite limit
    double slope_tol = 1e-4;   // tail slope magnitude treated as divergence
    double quad_tol = 1e-10;   // absolute quadrature tolerance
    double neg_tol_scale = 1e-9;  // negativity slack is scale*(1 + N(0))
    double tail_fraction = 0.25;  // final fraction of the horizon used as "tail"
    double ext_tol = 1e-3;     // extinction: tail N below ext_tol*(1 + N(0))
    double growth_tol = 2.0;   // bounded: tail max below growth_tol * earlier max
    double osc_tol = 1e-3;     // oscillation amplitude relative to tail mean
    double inv_tol = 1e-9;     // invariant-set containment slack (absolute)
    double unbounded_factor = 1e6; // unbounded: exceeding factor*(1 + initial)
    double oracle_tol_I = 1e-6;   // closed-form infected reconstruction, relative
    double oracle_tol_N = 1e-5;   // closed-form total reconstruction, relative
    double oracle_tol_psi = 1e-5; // state-transition reconstruction, relative
    double periodic_residual_factor = 10.0; // periodicity verdict: |res| <= factor*quad_tol

    bool operator==(const Thresholds&) const = default;
};

} // namespace sisim
