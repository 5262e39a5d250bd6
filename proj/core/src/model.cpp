#include "sisim/model.hpp"

#include <cmath>
#include <sstream>

#include "sisim/errors.hpp"

namespace sisim {

double carrying_capacity(const ModelParams& params, double t) {
    const double p = eval(params.K, t) + eval(params.p0, t);
    if (!(p >= params.eps0) || !std::isfinite(p)) {
        std::ostringstream msg;
        msg << "carrying capacity " << p << " at t=" << t
            << " fell below its floor " << params.eps0;
        throw ModelConsistencyError(msg.str());
    }
    return p;
}

double incidence(const ModelParams& params, const State& state, double t) {
    return eval(params.delta1, t) * state.S + eval(params.delta2, t) * state.I;
}

Derivative vector_field(const ModelParams& params, double t, const State& state) {
    const double p = carrying_capacity(params, t);
    const double gamma = eval(params.gamma, t);
    const double beta = eval(params.beta, t);
    const double g = incidence(params, state, t);
    const double growth = eval(params.r, t) * (1.0 - g / p);
    Derivative out;
    out.dS = growth * state.S + (gamma - beta * state.S) * state.I;
    out.dI = (beta * state.S - eval(params.d, t) - gamma) * state.I;
    return out;
}

} // namespace sisim
