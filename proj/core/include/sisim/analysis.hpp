#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "sisim/integrator.hpp"
#include "sisim/model.hpp"
#include "sisim/thresholds.hpp"

namespace sisim {

/// Constant limits of the coefficient functions (capacity already combined
/// into p_star = lim K + p0).
struct LimitingParams {
    double r_star = 0.0;
    double d_star = 0.0;
    double gamma_star = 0.0;
    double beta_star = 0.0;
    double delta1_star = 0.0;
    double delta2_star = 0.0;
    double p_star = 1.0;
};

/// Per-coefficient tail-limit estimates; a disengaged optional means the
/// coefficient kept oscillating beyond limit_tol over the window.
struct LimitEstimate {
    std::optional<double> r, d, gamma, beta, delta1, delta2, p;
    double window_start = 0.0;
    double window_end = 0.0;

    bool complete() const;
    LimitingParams values() const; // throws AnalysisError unless complete()
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

enum class StabilityClass {
    locally_asymptotically_stable,
    locally_stable_not_asymptotic,
    unstable,
    critical_degenerate,
    inconclusive,
};

const char* to_string(StabilityClass c);

enum class EquilibriumKind { zero, endemic };

struct Equilibrium {
    EquilibriumKind kind = EquilibriumKind::zero;
    State point;
    Matrix2 jacobian{};
    StabilityClass classification = StabilityClass::inconclusive;
    std::array<std::complex<double>, 2> eigenvalues{};
    bool admissible = true; // endemic point has S > 0 and I > 0
    double residual = 0.0;  // |vector field| at the point
};

/// Vector field of the limiting (constant-coefficient) system.
Derivative limiting_vector_field(const LimitingParams& lim, const State& state);

/// Tail-mean limits of the coefficients over [t0, t1]; a coefficient whose
/// enclosure width over the window exceeds limit_tol gets no value.
LimitEstimate limiting_params(const ModelParams& params, double t0, double t1,
                              double limit_tol = 1e-6, double quad_tol = 1e-10);

/// The zero equilibrium plus, when beta_star > 0, the endemic point
///   S = (d* + gamma*)/beta*,  I = r*S(p* - delta1*S) / (d*p* + r*delta2*S)
/// polished by Newton iteration to residual <= 1e-12*(1 + |point|). The
/// endemic point is flagged non-admissible when either component is <= 0.
std::vector<Equilibrium> equilibria(const LimitingParams& lim,
                                    const Thresholds& thresholds = {});

/// Analytic Jacobian of the limiting vector field at a point.
Matrix2 jacobian(const LimitingParams& lim, const State& point);

std::array<std::complex<double>, 2> eigenvalues_2x2(const Matrix2& m);

StabilityClass classify_zero_equilibrium(const LimitingParams& lim, double class_tol);
StabilityClass classify_endemic_equilibrium(const Matrix2& jac, double class_tol);

/// Classification entry point used by `equilibria`; dispatches on the
/// equilibrium kind.
StabilityClass classify_equilibrium(EquilibriumKind kind, const LimitingParams& lim,
                                    const Matrix2& jac, double class_tol);

struct PeriodicityVerdict {
    bool periodic = false;
    double max_residual = 0.0;
    std::vector<std::pair<double, double>> residuals; // (t, window integral)
};

/// Tests whether the integral of r(1 - delta1) over every window
/// [t, t + Tp] vanishes, which characterizes a Tp-periodic infection-free
/// capacity-tracking solution.
PeriodicityVerdict verify_periodic_capacity(const ModelParams& params, double Tp,
                                            int n_probes, double horizon,
                                            const Thresholds& thresholds = {});

enum class InfectionFreeClass { asymptotically_stable, stable, unstable, inconclusive };

const char* to_string(InfectionFreeClass c);

struct InfectionFreeReport {
    InfectionFreeClass label = InfectionFreeClass::inconclusive;
    double tail_slope = 0.0;
    std::vector<std::pair<double, double>> curve; // (t, integral of r(1-delta1))
};

/// Classifies the infection-free flow by the growth exponent
/// Phi(t) = integral of r(1 - delta1) over [0, t]: a negative tail slope is
/// asymptotic stability evidence, a positive one instability, a flat tail
/// plain stability. Finite-horizon evidence, not proof.
InfectionFreeReport classify_infection_free(const ModelParams& params, double horizon,
                                            const Thresholds& thresholds = {});

} // namespace sisim
