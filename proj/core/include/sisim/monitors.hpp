#pragma once

#include <map>
#include <string>
#include <vector>

#include "sisim/analysis.hpp"
#include "sisim/integrator.hpp"
#include "sisim/trajectory.hpp"

namespace sisim {

enum class Verdict { yes, no, undetermined };

const char* to_string(Verdict v);

/// One monitored statement evaluated along a trajectory: were its premises
/// observed to hold, and was its claimed behaviour observed? A pair
/// (hypothesis yes, conclusion no) is a violation witness and fails a run.
struct CheckEntry {
    std::string check_id;
    Verdict hypothesis = Verdict::undetermined;
    Verdict conclusion = Verdict::undetermined;
    std::map<std::string, double> evidence;
    std::string notes;

    bool violation() const {
        return hypothesis == Verdict::yes && conclusion == Verdict::no;
    }
};

struct ConditionReport {
    std::vector<CheckEntry> entries;

    bool any_violation() const;
    const CheckEntry* find(const std::string& id) const;
};

/// Registry of all check ids, in report order.
const std::vector<std::string>& check_registry();

/// Upper-triangular state-transition factors reconstructed from quadratures
/// along the trajectory: S(t) ~ psi11*S(t0) + psi12*I(t0), I(t) ~ psi22*I(t0)
/// with t0 the segment base (0 or the preceding impulse). psi21 is zero by
/// construction.
struct FundamentalMatrix {
    double psi11 = 1.0;
    double psi12 = 0.0;
    double psi22 = 1.0;
    double t = 0.0;
    double base_t = 0.0;
};

struct Interval {
    double a = 0.0;
    double b = 0.0;
    double length() const { return b - a; }
};

/// Partition of [t0, t1] by the sign of a coefficient function; interval
/// unions cover the window exactly.
struct SignPartition {
    std::vector<Interval> pos, neg, zero;
    double t0 = 0.0;
    double t1 = 0.0;

    double measure_pos() const;
    double measure_neg() const;
    double measure_zero() const;
};

SignPartition sign_partition(const TimeFunction& f, double t0, double t1,
                             int grid_cells = 2048);

/// Shared quadrature state for the closed-form reconstructions; caches the
/// cumulative integrals per inter-impulse window of one trajectory.
class ClosedFormEngine {
public:
    ClosedFormEngine(const Trajectory& traj, const ModelParams& params,
                     double quad_tol = 1e-12);

    /// I(t) rebuilt as I(base)*exp(int(beta*S - d - gamma)), restarting at
    /// impulses; S interpolated from the dense output.
    double infected(double t) const;

    /// N(t) rebuilt by variation of constants around the growth exponent
    /// a = r(1 - G/p), with the infected forcing taken from the exponential
    /// reconstruction above.
    double total(double t) const;

    FundamentalMatrix fundamental(double t) const;

    ~ClosedFormEngine();
    ClosedFormEngine(const ClosedFormEngine&) = delete;
    ClosedFormEngine& operator=(const ClosedFormEngine&) = delete;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

double closed_form_I(const Trajectory& traj, const ModelParams& params, double t,
                     double quad_tol = 1e-12);
double closed_form_N(const Trajectory& traj, const ModelParams& params, double t,
                     double quad_tol = 1e-12);
FundamentalMatrix reconstruct_fundamental_matrix(const Trajectory& traj,
                                                 const ModelParams& params, double t,
                                                 double quad_tol = 1e-12);

enum class ImpulseWRule { from_p, from_q, from_min };

const char* to_string(ImpulseWRule r);

/// Nonnegativity of both components, with the exact-zero clauses (I(0) = 0
/// keeps I identically zero; N(0) = 0 keeps the whole state zero).
CheckEntry check_positivity(const Trajectory& traj, const Scenario& scenario);

/// Quadrature test of the recovery-rate condition that keeps the
/// susceptible component nonnegative when gamma dips negative.
CheckEntry check_negative_gamma_positivity(const Trajectory& traj,
                                           const Scenario& scenario);

/// Boundedness / extinction / growth statements evaluated with
/// finite-horizon tail surrogates; one entry per statement.
std::vector<CheckEntry> check_boundedness_suite(const Trajectory& traj,
                                                const Scenario& scenario);

enum class InvariantSetKind { capacity, initial };

/// Positively-invariant-region containment: `capacity` is the region
/// N <= min p / delta_m, `initial` the region N <= N(0) under pointwise
/// coefficient conditions.
CheckEntry check_invariant_set(const Trajectory& traj, const Scenario& scenario,
                               InvariantSetKind which);

/// Bounded, non-vanishing, non-convergent infection-free total population.
CheckEntry detect_oscillation(const Trajectory& traj, const Scenario& scenario);

/// Growth-versus-culling balance: C_k = int r over [0, t_k] minus the
/// accumulated |ln(1 - w)| contractions, nonpositive on the tail.
CheckEntry check_impulsive_boundedness(const Trajectory& traj,
                                       const Scenario& scenario,
                                       ImpulseWRule w_rule = ImpulseWRule::from_min);

/// Boundedness from a strictly positive incidence floor, valid with or
/// without culling events.
CheckEntry check_bounded_min_incidence(const Trajectory& traj,
                                       const Scenario& scenario);

/// Except for the trivial solution, the susceptible population cannot stay
/// identically zero while recovery feeds it from the infected one.
CheckEntry check_no_zero_susceptible(const Trajectory& traj, const Scenario& scenario);

/// Runs every check enabled in the scenario's selection, in registry order.
ConditionReport run_all_checks(const Trajectory& traj, const Scenario& scenario);

} // namespace sisim
