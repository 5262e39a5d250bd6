#pragma once

#include "sisim/time_function.hpp"

namespace sisim {

/// Coefficient functions of the susceptible/infected dynamics. `eps0` is
/// the strictly positive floor of the carrying capacity K + p0.
struct ModelParams {
    TimeFunction r = constant(0.0);      // intrinsic growth rate (signed)
    TimeFunction d = constant(0.0);      // death rate of the infected
    TimeFunction gamma = constant(0.0);  // recovery rate (may dip negative if enabled)
    TimeFunction beta = constant(0.0);   // infection rate
    TimeFunction delta1 = constant(0.0); // incidence weight on susceptible
    TimeFunction delta2 = constant(0.0); // incidence weight on infected
    TimeFunction K = constant(1.0);      // capacity baseline
    TimeFunction p0 = constant(0.0);     // capacity oscillation
    double eps0 = 1e-6;

    bool operator==(const ModelParams&) const = default;
};

struct State {
    double S = 0.0;
    double I = 0.0;

    double N() const { return S + I; }
    bool operator==(const State&) const = default;
};

struct Derivative {
    double dS = 0.0;
    double dI = 0.0;
};

/// K(t) + p0(t); throws ModelConsistencyError if the value is not >= eps0.
double carrying_capacity(const ModelParams& params, double t);

/// Incidence G(t) = delta1(t)*S + delta2(t)*I.
double incidence(const ModelParams& params, const State& state, double t);

/// Right hand side of the model:
///   dS = r(t)(1 - G/p)S + (gamma(t) - beta(t)S)I
///   dI = (beta(t)S - d(t) - gamma(t))I
/// I is kept as a multiplicative factor of dI, so I == 0 gives dI == 0
/// bit-exactly and the infected component can never drift off zero.
Derivative vector_field(const ModelParams& params, double t, const State& state);

} // namespace sisim
