#include <benchmark/benchmark.h>

#include "sisim/monitors.hpp"

using namespace sisim;

namespace {

Scenario monitored_scenario() {
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
    return sc;
}

void BM_ClosedFormTotal(benchmark::State& state) {
    const Scenario sc = monitored_scenario();
    const Trajectory traj = integrate(sc);
    for (auto _ : state) {
        ClosedFormEngine engine(traj, sc.params);
        benchmark::DoNotOptimize(engine.total(sc.horizon));
    }
}
BENCHMARK(BM_ClosedFormTotal);

void BM_FundamentalMatrix(benchmark::State& state) {
    const Scenario sc = monitored_scenario();
    const Trajectory traj = integrate(sc);
    for (auto _ : state) {
        ClosedFormEngine engine(traj, sc.params);
        benchmark::DoNotOptimize(engine.fundamental(sc.horizon).psi12);
    }
}
BENCHMARK(BM_FundamentalMatrix);

void BM_FullCheckSuite(benchmark::State& state) {
    const Scenario sc = monitored_scenario();
    const Trajectory traj = integrate(sc);
    for (auto _ : state) {
        const ConditionReport rep = run_all_checks(traj, sc);
        benchmark::DoNotOptimize(rep.entries.size());
    }
}
BENCHMARK(BM_FullCheckSuite);

} // namespace
