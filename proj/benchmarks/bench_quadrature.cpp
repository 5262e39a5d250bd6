#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sisim/time_function.hpp"

using namespace sisim;

namespace {

void BM_IntegrateSinusoid(benchmark::State& state) {
    const TimeFunction f = sinusoid(1.0, 0.5, 2.0, 0.3);
    const double tol = std::pow(10.0, -state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate(f, 0.0, 50.0, tol));
}
BENCHMARK(BM_IntegrateSinusoid)->Arg(6)->Arg(10)->Arg(12);

void BM_IntegrateStepFunction(benchmark::State& state) {
    std::vector<double> breaks, values{0.5};
    for (int i = 1; i < 40; ++i) {
        breaks.push_back(i * 1.25);
        values.push_back(0.5 + 0.1 * (i % 5));
    }
    const TimeFunction f = piecewise_constant(breaks, values);
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate(f, 0.0, 50.0, 1e-10));
}
BENCHMARK(BM_IntegrateStepFunction);

void BM_IntegrateNestedSum(benchmark::State& state) {
    const TimeFunction f =
        sum({constant(1.0), sinusoid(0.0, 0.4, 3.0, 0.0),
             scaled(0.5, sum({piecewise_linear({{0.0, 1.0}, {25.0, 0.0}}),
                              sinusoid(0.0, 0.2, 0.7, 1.0)}))});
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate(f, 0.0, 50.0, 1e-10));
}
BENCHMARK(BM_IntegrateNestedSum);

void BM_BoundsOver(benchmark::State& state) {
    const TimeFunction f =
        sum({constant(1.0), sinusoid(0.0, 0.4, 3.0, 0.0),
             scaled(0.5, piecewise_linear({{0.0, 1.0}, {25.0, 0.0}}))});
    for (auto _ : state)
        benchmark::DoNotOptimize(bounds_over(f, 0.0, 50.0));
}
BENCHMARK(BM_BoundsOver);

} // namespace
