#include <benchmark/benchmark.h>

#include <cmath>

#include "sisim/integrator.hpp"

using namespace sisim;

namespace {

Scenario endemic_scenario(double rel_tol) {
    Scenario sc;
    sc.params.r = constant(1.0);
    sc.params.d = constant(0.5);
    sc.params.gamma = constant(0.5);
    sc.params.beta = constant(0.1);
    sc.params.delta1 = constant(1.0);
    sc.params.delta2 = constant(1.0);
    sc.params.K = constant(100.0);
    sc.params.p0 = constant(0.0);
    sc.initial = {40.0, 5.0};
    sc.horizon = 40.0;
    sc.tolerances = {rel_tol, rel_tol * 1e-2};
    return sc;
}

void BM_IntegrateEndemic(benchmark::State& state) {
    const Scenario sc = endemic_scenario(std::pow(10.0, -state.range(0)));
    for (auto _ : state) {
        const Trajectory traj = integrate(sc);
        benchmark::DoNotOptimize(traj.samples.size());
    }
}
BENCHMARK(BM_IntegrateEndemic)->Arg(6)->Arg(8)->Arg(10);

void BM_IntegrateSeasonal(benchmark::State& state) {
    Scenario sc = endemic_scenario(1e-8);
    sc.params.beta = sinusoid(0.08, 0.04, 1.0, 0.0);
    sc.params.p0 = sinusoid(0.0, 20.0, 4.0, 0.0);
    for (auto _ : state) {
        const Trajectory traj = integrate(sc);
        benchmark::DoNotOptimize(traj.samples.size());
    }
}
BENCHMARK(BM_IntegrateSeasonal);

void BM_IntegrateWithImpulses(benchmark::State& state) {
    Scenario sc = endemic_scenario(1e-8);
    sc.schedule.min_gap = 1.0;
    const double w = 1.0 - std::exp(-0.5);
    for (int k = 1; k < 40; ++k)
        sc.schedule.events.push_back({static_cast<double>(k), w, w});
    for (auto _ : state) {
        const Trajectory traj = integrate(sc);
        benchmark::DoNotOptimize(traj.impulse_records.size());
    }
}
BENCHMARK(BM_IntegrateWithImpulses);

} // namespace
