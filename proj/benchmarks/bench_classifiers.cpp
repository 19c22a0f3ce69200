#include "symclass/lie_classifier.hpp"
#include "symclass/noether_classifier.hpp"
#include "symclass/reparam.hpp"
#include "symclass/verifier.hpp"

#include <benchmark/benchmark.h>

using namespace symclass;

namespace {

Vec vec3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

void BM_LieKepler(benchmark::State& state) {
    const auto E = MetricSpace::euclidean(3);
    const auto catalog = euclidean_catalog(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(classify_lie(E, ScalarField::kepler(), OmegaProfile::power_law(1), catalog));
}
BENCHMARK(BM_LieKepler)->Unit(benchmark::kMillisecond);

void BM_LieOscillator(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto E = MetricSpace::euclidean(n);
    const auto catalog = euclidean_catalog(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(classify_lie(E, ScalarField::quadratic(), OmegaProfile::power_law(1), catalog));
}
BENCHMARK(BM_LieOscillator)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_NoetherKepler(benchmark::State& state) {
    const auto E = MetricSpace::euclidean(3);
    const auto catalog = euclidean_catalog(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(classify_noether(E, ScalarField::kepler(), OmegaProfile::power_law(-0.5), catalog));
}
BENCHMARK(BM_NoetherKepler)->Unit(benchmark::kMillisecond);

void BM_IntegrateKepler(benchmark::State& state) {
    const auto E = MetricSpace::euclidean(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate(E, ScalarField::kepler(), OmegaProfile::power_law(-0.5), vec3(1, 0, 0),
                                           vec3(0, 1.1, 0.2), {1.0, 10.0}, 1e-10));
}
BENCHMARK(BM_IntegrateKepler)->Unit(benchmark::kMillisecond);

void BM_DeterminingEquations(benchmark::State& state) {
    const auto E = MetricSpace::euclidean(3);
    const auto r = classify_lie(E, ScalarField::kepler(), OmegaProfile::power_law(1), euclidean_catalog(3));
    for (auto _ : state)
        for (const auto& s : r.symmetries)
            benchmark::DoNotOptimize(check_determining_eqs(s, E, ScalarField::kepler(), OmegaProfile::power_law(1)));
}
BENCHMARK(BM_DeterminingEquations)->Unit(benchmark::kMillisecond);

void BM_DampedToTimeDep(benchmark::State& state) {
    const auto phi = DampingProfile::tabulated({1, 2, 3, 4, 5}, {0.1, 0.3, 0.2, 0.5, 0.4});
    for (auto _ : state) benchmark::DoNotOptimize(damped_to_timedep(phi, Interval::closed(1, 5)));
}
BENCHMARK(BM_DampedToTimeDep)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
