#include "sisim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sisim/errors.hpp"
#include "sisim/quadrature.hpp"

namespace sisim {

const char* to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::locally_asymptotically_stable:
            return "locally_asymptotically_stable";
        case StabilityClass::locally_stable_not_asymptotic:
            return "locally_stable_not_asymptotic";
        case StabilityClass::unstable: return "unstable";
        case StabilityClass::critical_degenerate: return "critical_degenerate";
        case StabilityClass::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

const char* to_string(InfectionFreeClass c) {
    switch (c) {
        case InfectionFreeClass::asymptotically_stable: return "asymptotically_stable";
        case InfectionFreeClass::stable: return "stable";
        case InfectionFreeClass::unstable: return "unstable";
        case InfectionFreeClass::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

bool LimitEstimate::complete() const {
    return r && d && gamma && beta && delta1 && delta2 && p;
}

LimitingParams LimitEstimate::values() const {
    if (!complete())
        throw AnalysisError("limiting parameters requested but at least one "
                            "coefficient has no finite tail limit");
    return LimitingParams{*r, *d, *gamma, *beta, *delta1, *delta2, *p};
}

Derivative limiting_vector_field(const LimitingParams& lim, const State& state) {
    const double g = lim.delta1_star * state.S + lim.delta2_star * state.I;
    Derivative out;
    out.dS = lim.r_star * (1.0 - g / lim.p_star) * state.S +
             (lim.gamma_star - lim.beta_star * state.S) * state.I;
    out.dI = (lim.beta_star * state.S - lim.d_star - lim.gamma_star) * state.I;
    return out;
}

namespace {

std::optional<double> tail_limit(const TimeFunction& f, double t0, double t1,
                                 double limit_tol, double quad_tol) {
    const FunctionBounds b = bounds_over(f, t0, t1);
    if (!b.finite() || b.upper - b.lower > limit_tol) return std::nullopt;
    return integrate(f, t0, t1, quad_tol) / (t1 - t0);
}

struct TrendFit {
    double slope = 0.0;
    double residual_rms = 0.0;
    double window = 0.0;

    // a drift is only a trend when it dominates the oscillation around the fit
    bool significant(double slope_tol) const {
        return std::abs(slope) > slope_tol &&
               std::abs(slope) * window > 2.0 * residual_rms;
    }
};

TrendFit fit_trend(const std::vector<std::pair<double, double>>& pts) {
    TrendFit fit;
    if (pts.size() < 2) return fit;
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    double ss = 0.0;
    for (const auto& [x, y] : pts) {
        const double r = y - (my + fit.slope * (x - mx));
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(pts.size()));
    fit.window = pts.back().first - pts.front().first;
    return fit;
}

} // namespace

LimitEstimate limiting_params(const ModelParams& params, double t0, double t1,
                              double limit_tol, double quad_tol) {
    if (!(t1 > t0) || t0 < 0.0)
        throw std::domain_error("limiting_params needs 0 <= t0 < t1");
    LimitEstimate est;
    est.window_start = t0;
    est.window_end = t1;
    est.r = tail_limit(params.r, t0, t1, limit_tol, quad_tol);
    est.d = tail_limit(params.d, t0, t1, limit_tol, quad_tol);
    est.gamma = tail_limit(params.gamma, t0, t1, limit_tol, quad_tol);
    est.beta = tail_limit(params.beta, t0, t1, limit_tol, quad_tol);
    est.delta1 = tail_limit(params.delta1, t0, t1, limit_tol, quad_tol);
    est.delta2 = tail_limit(params.delta2, t0, t1, limit_tol, quad_tol);
    est.p = tail_limit(sum({params.K, params.p0}), t0, t1, limit_tol, quad_tol);
    return est;
}

Matrix2 jacobian(const LimitingParams& lim, const State& point) {
    Matrix2 j{};
    const double S = point.S, I = point.I;
    j[0][0] = lim.r_star * (1.0 - (2.0 * lim.delta1_star * S + lim.delta2_star * I) /
                                      lim.p_star) -
              lim.beta_star * I;
    j[0][1] = lim.gamma_star -
              (lim.beta_star + lim.r_star * lim.delta2_star / lim.p_star) * S;
    j[1][0] = lim.beta_star * I;
    j[1][1] = lim.beta_star * S - lim.d_star - lim.gamma_star;
    return j;
}

std::array<std::complex<double>, 2> eigenvalues_2x2(const Matrix2& m) {
    const double tr = m[0][0] + m[1][1];
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const double disc = tr * tr - 4.0 * det;
    std::array<std::complex<double>, 2> out;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        out[0] = {0.5 * (tr - root), 0.0};
        out[1] = {0.5 * (tr + root), 0.0};
    } else {
        const double root = std::sqrt(-disc);
        out[0] = {0.5 * tr, -0.5 * root};
        out[1] = {0.5 * tr, 0.5 * root};
    }
    return out;
}

StabilityClass classify_zero_equilibrium(const LimitingParams& lim, double tol) {
    const double r = lim.r_star;
    const double dg = lim.d_star + lim.gamma_star;
    if (std::abs(r) <= tol && std::abs(lim.d_star) <= tol &&
        std::abs(lim.gamma_star) <= tol)
        return StabilityClass::critical_degenerate;
    if (r < -tol && dg > tol) return StabilityClass::locally_asymptotically_stable;
    if (std::abs(r) <= tol && dg > tol)
        return StabilityClass::locally_stable_not_asymptotic;
    if (r > tol) return StabilityClass::unstable;
    // remaining sign patterns: decide by the eigenvalues r and -(d+gamma)
    const double max_re = std::max(r, -dg);
    if (max_re > tol) return StabilityClass::unstable;
    if (max_re < -tol) return StabilityClass::locally_asymptotically_stable;
    return StabilityClass::locally_stable_not_asymptotic;
}

StabilityClass classify_endemic_equilibrium(const Matrix2& jac, double tol) {
    const double tr = jac[0][0] + jac[1][1];
    const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    if (!std::isfinite(tr) || !std::isfinite(det)) return StabilityClass::inconclusive;
    if (det < -tol) return StabilityClass::unstable;
    if (tr > tol) return StabilityClass::unstable;
    if (tr < -tol && det > tol) return StabilityClass::locally_asymptotically_stable;
    // boundary: trace <= 0 with det ~ 0, or trace ~ 0 with det > 0
    return StabilityClass::locally_stable_not_asymptotic;
}

StabilityClass classify_equilibrium(EquilibriumKind kind, const LimitingParams& lim,
                                    const Matrix2& jac, double tol) {
    return kind == EquilibriumKind::zero ? classify_zero_equilibrium(lim, tol)
                                         : classify_endemic_equilibrium(jac, tol);
}

namespace {

// Newton iteration on the limiting vector field with the analytic Jacobian.
State polish_equilibrium(const LimitingParams& lim, State x) {
    for (int iter = 0; iter < 60; ++iter) {
        const Derivative f = limiting_vector_field(lim, x);
        const double scale = 1.0 + std::hypot(x.S, x.I);
        if (std::hypot(f.dS, f.dI) <= 1e-13 * scale) return x;
        const Matrix2 j = jacobian(lim, x);
        const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if (det == 0.0 || !std::isfinite(det)) break;
        const double dS = (f.dS * j[1][1] - f.dI * j[0][1]) / det;
        const double dI = (f.dI * j[0][0] - f.dS * j[1][0]) / det;
        x.S -= dS;
        x.I -= dI;
        if (!std::isfinite(x.S) || !std::isfinite(x.I)) break;
    }
    const Derivative f = limiting_vector_field(lim, x);
    const double scale = 1.0 + std::hypot(x.S, x.I);
    if (std::hypot(f.dS, f.dI) > 1e-12 * scale) {
        std::ostringstream msg;
        msg << "Newton polishing of the endemic equilibrium did not converge; "
            << "last iterate (" << x.S << ", " << x.I << ") has residual "
            << std::hypot(f.dS, f.dI);
        throw AnalysisError(msg.str());
    }
    return x;
}

Equilibrium make_equilibrium(EquilibriumKind kind, const LimitingParams& lim,
                             const State& point, double class_tol) {
    Equilibrium eq;
    eq.kind = kind;
    eq.point = point;
    eq.jacobian = jacobian(lim, point);
    eq.eigenvalues = eigenvalues_2x2(eq.jacobian);
    eq.classification = classify_equilibrium(kind, lim, eq.jacobian, class_tol);
    const Derivative f = limiting_vector_field(lim, point);
    eq.residual = std::hypot(f.dS, f.dI);
    return eq;
}

} // namespace

std::vector<Equilibrium> equilibria(const LimitingParams& lim,
                                    const Thresholds& thresholds) {
    if (!(lim.p_star > 0.0))
        throw std::invalid_argument("limiting capacity must be positive");
    std::vector<Equilibrium> out;
    out.push_back(
        make_equilibrium(EquilibriumKind::zero, lim, State{0.0, 0.0}, thresholds.class_tol));

    if (lim.beta_star > 0.0) {
        const double S2 = (lim.d_star + lim.gamma_star) / lim.beta_star;
        const double denom = lim.d_star * lim.p_star + lim.r_star * lim.delta2_star * S2;
        if (denom != 0.0) {
            const double I2 =
                lim.r_star * S2 * (lim.p_star - lim.delta1_star * S2) / denom;
            State point{S2, I2};
            const bool admissible = S2 > 0.0 && I2 > 0.0;
            if (admissible) point = polish_equilibrium(lim, point);
            Equilibrium eq =
                make_equilibrium(EquilibriumKind::endemic, lim, point, thresholds.class_tol);
            eq.admissible = admissible;
            out.push_back(eq);
        }
    }
    return out;
}

PeriodicityVerdict verify_periodic_capacity(const ModelParams& params, double Tp,
                                            int n_probes, double horizon,
                                            const Thresholds& thresholds) {
    if (!(Tp > 0.0)) throw std::domain_error("probe period must be positive");
    if (Tp > horizon)
        throw std::domain_error("probe period exceeds the scenario horizon");
    n_probes = std::max(n_probes, 1);

    auto growth = [&](double t) {
        return eval(params.r, t) * (1.0 - eval(params.delta1, t));
    };
    PeriodicityVerdict verdict;
    const double span = horizon - Tp;
    for (int i = 0; i < n_probes; ++i) {
        const double t =
            n_probes == 1 ? 0.0 : span * static_cast<double>(i) / (n_probes - 1);
        std::vector<double> breaks =
            merged_breakpoints({&params.r, &params.delta1}, t, t + Tp);
        const double res =
            integrate_adaptive(growth, t, t + Tp, breaks, thresholds.quad_tol);
        verdict.residuals.emplace_back(t, res);
        verdict.max_residual = std::max(verdict.max_residual, std::abs(res));
    }
    verdict.periodic = verdict.max_residual <=
                       thresholds.periodic_residual_factor * thresholds.quad_tol;
    return verdict;
}

InfectionFreeReport classify_infection_free(const ModelParams& params, double horizon,
                                            const Thresholds& thresholds) {
    if (!(horizon > 0.0)) throw std::domain_error("horizon must be positive");
    constexpr int kGrid = 512;

    auto growth = [&](double t) {
        return eval(params.r, t) * (1.0 - eval(params.delta1, t));
    };
    std::vector<double> boundaries =
        merged_breakpoints({&params.r, &params.delta1}, 0.0, horizon);
    boundaries.push_back(0.0);
    boundaries.push_back(horizon);
    for (int i = 1; i < kGrid; ++i)
        boundaries.push_back(horizon * static_cast<double>(i) / kGrid);
    CumulativeIntegral phi(growth, std::move(boundaries), thresholds.quad_tol);

    InfectionFreeReport report;
    for (int i = 0; i <= kGrid; ++i) {
        const double t = horizon * static_cast<double>(i) / kGrid;
        report.curve.emplace_back(t, phi(t));
    }
    const std::size_t tail_begin = static_cast<std::size_t>(
        std::floor((1.0 - thresholds.tail_fraction) * report.curve.size()));
    std::vector<std::pair<double, double>> tail(report.curve.begin() + tail_begin,
                                                report.curve.end());
    const TrendFit fit = fit_trend(tail);
    report.tail_slope = fit.slope;

    if (!fit.significant(thresholds.slope_tol))
        report.label = InfectionFreeClass::stable; // bounded over the horizon
    else if (fit.slope < 0.0)
        report.label = InfectionFreeClass::asymptotically_stable;
    else
        report.label = InfectionFreeClass::unstable;
    return report;
}

} // namespace sisim
