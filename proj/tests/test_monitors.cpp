#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "sisim/monitors.hpp"

using namespace sisim;

namespace {

Scenario base_scenario() {
    Scenario sc;
    sc.params.r = constant(1.0);
    sc.params.d = constant(0.5);
    sc.params.gamma = constant(0.2);
    sc.params.beta = constant(0.05);
    sc.params.delta1 = constant(1.0);
    sc.params.delta2 = constant(1.0);
    sc.params.K = constant(100.0);
    sc.params.p0 = constant(0.0);
    sc.initial = {50.0, 10.0};
    sc.horizon = 20.0;
    sc.tolerances = {1e-10, 1e-12};
    for (int i = 0; i <= 40; ++i) sc.output_grid.push_back(sc.horizon * i / 40.0);
    return sc;
}

} // namespace

TEST_SUITE("monitors") {

TEST_CASE("sign partition covers the window") {
    const TimeFunction f = sinusoid(0.1, 1.0, 2.0, 0.0);
    const SignPartition part = sign_partition(f, 0.0, 10.0);
    const double covered =
        part.measure_pos() + part.measure_neg() + part.measure_zero();
    CHECK(covered == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(part.measure_pos() > 0.0);
    CHECK(part.measure_neg() > 0.0);
    // sin crossings are located accurately: crossing of 0.1 + sin(pi t)
    for (const Interval& iv : part.pos) CHECK(eval(f, 0.5 * (iv.a + iv.b)) > 0.0);
    for (const Interval& iv : part.neg) CHECK(eval(f, 0.5 * (iv.a + iv.b)) < 0.0);

    const SignPartition zero = sign_partition(constant(0.0), 0.0, 5.0);
    CHECK(zero.measure_zero() == doctest::Approx(5.0));
}

TEST_CASE("positivity check on a standard scenario") {
    const Scenario sc = base_scenario();
    const Trajectory traj = integrate(sc);
    const CheckEntry e = check_positivity(traj, sc);
    CHECK(e.hypothesis == Verdict::yes);
    CHECK(e.conclusion == Verdict::yes);
}

TEST_CASE("positivity records exact-zero clauses") {
    Scenario sc = base_scenario();
    sc.initial = {0.0, 0.0};
    const Trajectory traj = integrate(sc);
    const CheckEntry e = check_positivity(traj, sc);
    CHECK(e.hypothesis == Verdict::yes);
    CHECK(e.conclusion == Verdict::yes);
    CHECK(e.evidence.at("max_abs_state_given_N0_zero") == 0.0);
}

TEST_CASE("negative recovery left unguarded is reported, not asserted") {
    Scenario sc = base_scenario();
    sc.allow_negative_gamma = true;
    sc.params.gamma = constant(-5.0);
    sc.params.beta = constant(0.1);
    sc.initial = {0.1, 10.0};
    sc.horizon = 2.0;
    const Trajectory traj = integrate(sc);
    const CheckEntry e = check_negative_gamma_positivity(traj, sc);
    CHECK(e.hypothesis == Verdict::no); // condition fails...
    CHECK(traj.min_S < -traj.neg_tol);  // ...and S indeed escapes
    CHECK(e.conclusion == Verdict::no);
    CHECK_FALSE(e.violation()); // hypothesis no: nothing is claimed
}

TEST_CASE("mild negative recovery pulse keeps S nonnegative") {
    Scenario sc = base_scenario();
    sc.allow_negative_gamma = true;
    sc.params.gamma = piecewise_constant({1.0, 1.2}, {0.5, -0.02, 0.5});
    sc.horizon = 5.0;
    const Trajectory traj = integrate(sc);
    const CheckEntry e = check_negative_gamma_positivity(traj, sc);
    CHECK(e.hypothesis == Verdict::yes);
    CHECK(e.conclusion == Verdict::yes);
}

TEST_CASE("negative recovery check skips without initial infection") {
    Scenario sc = base_scenario();
    sc.initial.I = 0.0;
    const Trajectory traj = integrate(sc);
    const CheckEntry e = check_negative_gamma_positivity(traj, sc);
    CHECK(e.hypothesis == Verdict::undetermined);
    CHECK(e.conclusion == Verdict::undetermined);
}

TEST_CASE("closed-form infected reconstruction") {
    // beta = 0, d + gamma = 1: I(t) = I(0) e^{-t}
    Scenario sc = base_scenario();
    sc.params.beta = constant(0.0);
    sc.params.d = constant(0.6);
    sc.params.gamma = constant(0.4);
    sc.horizon = 5.0;
    const Trajectory traj = integrate(sc);
    ClosedFormEngine engine(traj, sc.params);
    for (double t : {0.5, 1.0, 3.0, 5.0})
        CHECK(engine.infected(t) ==
              doctest::Approx(10.0 * std::exp(-t)).epsilon(1e-9));

    Scenario sc0 = base_scenario();
    sc0.initial.I = 0.0;
    const Trajectory traj0 = integrate(sc0);
    ClosedFormEngine engine0(traj0, sc0.params);
    CHECK(engine0.infected(7.0) == 0.0);
}

TEST_CASE("closed-form reconstructions match the integrator") {
    const Scenario sc = base_scenario();
    const Trajectory traj = integrate(sc);
    ClosedFormEngine engine(traj, sc.params);
    for (int i = 1; i <= 10; ++i) {
        const double t = sc.horizon * i / 10.0;
        const State ref = traj.interpolate(t);
        CHECK(std::abs(engine.infected(t) - ref.I) <=
              1e-6 * std::max(ref.I, 1e-12));
        CHECK(std::abs(engine.total(t) - (ref.S + ref.I)) <=
              1e-5 * (ref.S + ref.I));
    }
}

TEST_CASE("closed-form total with vanishing loss terms") {
    Scenario sc = base_scenario();
    sc.params.d = constant(0.0);
    sc.params.gamma = constant(0.0);
    sc.params.beta = constant(0.0);
    sc.horizon = 6.0;
    const Trajectory traj = integrate(sc);
    ClosedFormEngine engine(traj, sc.params);
    for (double t : {1.5, 4.0, 6.0}) {
        const State ref = traj.interpolate(t);
        CHECK(std::abs(engine.total(t) - ref.N()) <= 1e-6 * ref.N());
    }
}

TEST_CASE("state-transition reconstruction") {
    const Scenario sc = base_scenario();
    const Trajectory traj = integrate(sc);
    ClosedFormEngine engine(traj, sc.params);

    const FundamentalMatrix id = engine.fundamental(0.0);
    CHECK(id.psi11 == 1.0);
    CHECK(id.psi12 == 0.0);
    CHECK(id.psi22 == 1.0);

    for (int i = 1; i <= 8; ++i) {
        const double t = sc.horizon * i / 8.0;
        const FundamentalMatrix psi = engine.fundamental(t);
        const State ref = traj.interpolate(t);
        const double rec_S = psi.psi11 * sc.initial.S + psi.psi12 * sc.initial.I;
        const double rec_I = psi.psi22 * sc.initial.I;
        CHECK(std::hypot(rec_S - ref.S, rec_I - ref.I) <=
              1e-5 * std::hypot(ref.S, ref.I));
        // psi22 and the infected reconstruction share the same quadrature
        CHECK(psi.psi22 * sc.initial.I == engine.infected(t));
    }
}

TEST_CASE("state transition of the infection-free flow") {
    Scenario sc = base_scenario();
    sc.initial.I = 0.0;
    const Trajectory traj = integrate(sc);
    ClosedFormEngine engine(traj, sc.params);
    for (double t : {2.0, 10.0, 20.0}) {
        const FundamentalMatrix psi = engine.fundamental(t);
        const State ref = traj.interpolate(t);
        CHECK(std::abs(psi.psi11 * sc.initial.S - ref.S) <= 1e-6 * ref.S);
    }
}

TEST_CASE("boundedness suite: strictly positive rates keep the run bounded") {
    Scenario sc = base_scenario();
    sc.horizon = 60.0;
    const Trajectory traj = integrate(sc);
    const auto entries = check_boundedness_suite(traj, sc);
    ConditionReport rep{entries};
    const CheckEntry* e = rep.find("bounded_positive_rates");
    REQUIRE(e != nullptr);
    CHECK(e->hypothesis == Verdict::yes);
    CHECK(e->conclusion == Verdict::yes);
    CHECK_FALSE(rep.any_violation());
}

TEST_CASE("boundedness suite: capacity-driven extinction of the infection-free flow") {
    Scenario sc = base_scenario();
    sc.initial = {50.0, 0.0};
    sc.params.beta = constant(0.0);
    sc.params.delta1 = piecewise_linear({{0.0, 10.0}, {10.0, 2e5}});
    sc.horizon = 10.0;
    const Trajectory traj = integrate(sc);
    ConditionReport rep{check_boundedness_suite(traj, sc)};
    const CheckEntry* e = rep.find("infection_free_extinction");
    REQUIRE(e != nullptr);
    CHECK(e->hypothesis == Verdict::yes);
    CHECK(e->conclusion == Verdict::yes);
    CHECK(e->evidence.at("fitted_decay_rate") < 0.0);
    CHECK_FALSE(rep.any_violation());
}

TEST_CASE("boundedness suite: vanished growth with persistent death") {
    Scenario sc = base_scenario();
    sc.params.r = piecewise_linear({{0.0, 1.0}, {10.0, 0.0}});
    sc.horizon = 40.0;
    const Trajectory traj = integrate(sc);
    ConditionReport rep{check_boundedness_suite(traj, sc)};
    const CheckEntry* e = rep.find("death_dominated_bounded");
    REQUIRE(e != nullptr);
    CHECK(e->hypothesis == Verdict::yes);
    CHECK(e->conclusion == Verdict::yes);
    CHECK_FALSE(rep.any_violation());
}

TEST_CASE("boundedness suite: supercritical transmission blows up the infection") {
    Scenario sc = base_scenario();
    sc.params.r = constant(0.0);
    sc.params.d = constant(0.5);
    sc.params.gamma = constant(0.0);
    sc.params.beta = constant(0.002);
    sc.params.delta1 = constant(0.0);
    sc.params.delta2 = constant(0.0);
    sc.params.K = constant(2000.0);
    sc.initial = {1000.0, 1.0};
    sc.horizon = 4.5;
    sc.thresholds.unbounded_factor = 100.0;
    const Trajectory traj = integrate(sc);
    ConditionReport rep{check_boundedness_suite(traj, sc)};
    const CheckEntry* e = rep.find("unbounded_infection_growth");
    REQUIRE(e != nullptr);
    CHECK(e->hypothesis == Verdict::yes);
    CHECK(e->conclusion == Verdict::yes);
    CHECK_FALSE(rep.any_violation());
}

TEST_CASE("invariant capacity region holds for constant capacity") {
    Scenario sc = base_scenario(); // delta_m = 1, bound = 100
    sc.initial = {40.0, 10.0};
    const Trajectory traj = integrate(sc);
    const CheckEntry e = check_invariant_set(traj, sc, InvariantSetKind::capacity);
    CHECK(e.hypothesis == Verdict::yes);
    CHECK(e.conclusion == Verdict::yes);
    CHECK(e.evidence.at("bound_from_min_capacity") == doctest::Approx(100.0));
}

TEST_CASE("invariant capacity region: outside start is not asserted") {
    Scenario sc = base_scenario();
    sc.initial = {150.0, 20.0}; // N(0) above the bound
    const Trajectory traj = integrate(sc);
    const CheckEntry e = check_invariant_set(traj, sc, InvariantSetKind::capacity);
    CHECK(e.hypothesis == Verdict::no);
    CHECK_FALSE(e.violation());
}

TEST_CASE("initial-region invariance under incidence dominance") {
    Scenario sc = base_scenario();
    sc.params.beta = constant(0.0);
    sc.params.gamma = constant(0.0);
    sc.params.delta1 = constant(1.2);
    sc.params.delta2 = constant(1.0);
    sc.initial = {100.0, 0.0};
    sc.horizon = 10.0;
    const Trajectory traj = integrate(sc);
    const CheckEntry e = check_invariant_set(traj, sc, InvariantSetKind::initial);
    CHECK(e.hypothesis == Verdict::yes);
    CHECK(e.conclusion == Verdict::yes);
}

TEST_CASE("initial-region: printed inequalities alone do not bound the run") {
    Scenario sc = base_scenario();
    sc.params.delta1 = constant(0.001);
    sc.params.delta2 = constant(0.001);
    sc.params.beta = constant(0.0);
    sc.initial = {50.0, 0.0};
    sc.horizon = 5.0;
    const Trajectory traj = integrate(sc);
    const CheckEntry e = check_invariant_set(traj, sc, InvariantSetKind::initial);
    CHECK(e.evidence.at("printed_inequalities_hold") == 1.0);
    CHECK(e.hypothesis == Verdict::no); // dominance direction fails
    CHECK(e.conclusion == Verdict::no); // and N indeed grows
    CHECK_FALSE(e.violation());
}

TEST_CASE("oscillation detection") {
    // periodically forced infection-free flow settles on a periodic orbit
    Scenario osc = base_scenario();
    osc.initial = {95.0, 0.0};
    osc.params.delta1 = sum({constant(1.0), sinusoid(0.0, 0.3, 2.0, 0.0)});
    osc.horizon = 40.0;
    Trajectory traj = integrate(osc);
    CheckEntry e = detect_oscillation(traj, osc);
    CHECK(e.hypothesis == Verdict::yes);
    CHECK(e.conclusion == Verdict::yes);

    // exact equilibrium: N stays constant, nothing oscillates
    Scenario flat = base_scenario();
    flat.initial = {50.0, 0.0};
    flat.params.delta1 = constant(2.0);
    traj = integrate(flat);
    e = detect_oscillation(traj, flat);
    CHECK(e.conclusion == Verdict::no);
    CHECK_FALSE(e.violation());

    // negative growth: monotone decay, never reported oscillatory
    Scenario decay = base_scenario();
    decay.initial = {50.0, 0.0};
    decay.params.r = constant(-0.2);
    decay.params.delta1 = constant(0.1);
    traj = integrate(decay);
    e = detect_oscillation(traj, decay);
    CHECK(e.hypothesis == Verdict::no);
    CHECK(e.conclusion != Verdict::yes);
    CHECK_FALSE(e.violation());

    // not applicable with infection present
    Scenario infected = base_scenario();
    traj = integrate(infected);
    e = detect_oscillation(traj, infected);
    CHECK(e.hypothesis == Verdict::undetermined);
}

TEST_CASE("impulsive growth-compensation criterion") {
    // r = 0: the criterion is trivially satisfied
    Scenario flat = base_scenario();
    flat.params.r = constant(0.0);
    flat.schedule.min_gap = 1.0;
    flat.schedule.events = {{1.0, 0.3, 0.3}, {2.5, 0.2, 0.2}};
    Trajectory traj = integrate(flat);
    CheckEntry e = check_impulsive_boundedness(traj, flat, ImpulseWRule::from_min);
    CHECK(e.hypothesis == Verdict::yes);
    CHECK(e.evidence.at("tail_max_criterion") <= 0.0);
    CHECK_FALSE(e.violation());

    // no impulses, r = 1: the growth integral runs away
    Scenario grow = base_scenario();
    grow.initial = {50.0, 0.0};
    traj = integrate(grow);
    e = check_impulsive_boundedness(traj, grow, ImpulseWRule::from_min);
    CHECK(e.hypothesis == Verdict::no);
    CHECK(e.evidence.at("tail_max_criterion") > 1.0);

    // balanced culling: unit-spaced impulses with |ln(1-w)| = 1 per unit of r
    Scenario balanced = base_scenario();
    balanced.initial = {80.0, 0.0};
    balanced.horizon = 12.0;
    balanced.schedule.min_gap = 1.0;
    const double w = 1.0 - std::exp(-1.0);
    for (int k = 1; k <= 11; ++k)
        balanced.schedule.events.push_back({static_cast<double>(k), w, w});
    traj = integrate(balanced);
    e = check_impulsive_boundedness(traj, balanced, ImpulseWRule::from_min);
    CHECK(std::abs(e.evidence.at("tail_max_criterion")) <= 1e-10);
    CHECK(e.hypothesis == Verdict::yes);
    CHECK(e.conclusion == Verdict::yes);
}

TEST_CASE("susceptible regeneration from recovery") {
    Scenario sc = base_scenario();
    sc.initial = {0.0, 10.0};
    sc.params.gamma = constant(0.5);
    const Trajectory traj = integrate(sc);
    const Derivative d0 = vector_field(sc.params, 0.0, State{0.0, 10.0});
    CHECK(d0.dS == doctest::Approx(5.0)); // gamma * I feeds S immediately
    const CheckEntry e = check_no_zero_susceptible(traj, sc);
    CHECK(e.hypothesis == Verdict::yes);
    CHECK(e.conclusion == Verdict::yes);
    CHECK(e.evidence.at("max_S") > 0.0);

    Scenario trivial = base_scenario();
    trivial.initial = {0.0, 0.0};
    const Trajectory tt = integrate(trivial);
    const CheckEntry et = check_no_zero_susceptible(tt, trivial);
    CHECK(et.hypothesis == Verdict::undetermined);

    Scenario absent = base_scenario();
    absent.initial = {0.0, 10.0};
    absent.params.gamma = constant(0.0);
    const Trajectory ta = integrate(absent);
    const CheckEntry ea = check_no_zero_susceptible(ta, absent);
    CHECK(ea.hypothesis == Verdict::undetermined);
    CHECK(ea.evidence.at("max_S") == 0.0);
    // and the susceptible-absent regime is picked up by its own check
    ConditionReport rep{check_boundedness_suite(ta, absent)};
    const CheckEntry* decay = rep.find("susceptible_absent_decay");
    REQUIRE(decay != nullptr);
    CHECK(decay->hypothesis == Verdict::yes);
    CHECK(decay->conclusion == Verdict::yes);
}

TEST_CASE("full check suite yields no violation witness on the base scenario") {
    const Scenario sc = base_scenario();
    const Trajectory traj = integrate(sc);
    const ConditionReport rep = run_all_checks(traj, sc);
    CHECK(rep.entries.size() == check_registry().size());
    CHECK_FALSE(rep.any_violation());
    // registry order is preserved
    for (std::size_t i = 0; i < rep.entries.size(); ++i)
        CHECK(rep.entries[i].check_id == check_registry()[i]);
}

TEST_CASE("check selection filters the suite") {
    Scenario sc = base_scenario();
    sc.checks.all = false;
    sc.checks.ids = {"positivity", "invariant_region_capacity"};
    const Trajectory traj = integrate(sc);
    const ConditionReport rep = run_all_checks(traj, sc);
    CHECK(rep.entries.size() == 2);
    CHECK(rep.find("positivity") != nullptr);
    CHECK(rep.find("invariant_region_capacity") != nullptr);
}

} // TEST_SUITE
