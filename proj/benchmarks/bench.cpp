#include <benchmark/benchmark.h>

#include "rolldist/distribution.hpp"

using namespace rolldist;

static void BM_JetMultiply(benchmark::State& state) {
    Jet a = Jet::variable(0, cplx(1.3, 0.0), 3) + Jet::variable(1, cplx(0.4, 0.0), 3);
    Jet b = sin(a) + cosh(a * a);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMultiply);

static void BM_RollAt(benchmark::State& state) {
    RollingPair pair{builtin_surface("catenoid", {}), builtin_surface("helicoid", {})};
    for (auto _ : state) benchmark::DoNotOptimize(roll_at(pair, cplx(0.3), cplx(0.5)));
}
BENCHMARK(BM_RollAt);

static void BM_Frobenius(benchmark::State& state) {
    SurfacePatch plane = builtin_surface("plane", {});
    TangencyDistribution d = make_distribution(
        plane, {"w1", "w2", "0"}, "2 + w1 + w2", {{cplx(0.1), cplx(0.2), cplx(0.7), cplx(0.9)}});
    PfaffianSystem sys = leaf_system(d);
    std::array<cplx, 4> pt{cplx(0.1), cplx(0.2), cplx(0.7), cplx(0.9)};
    for (auto _ : state) benchmark::DoNotOptimize(frobenius_residual(sys, pt));
}
BENCHMARK(BM_Frobenius);

BENCHMARK_MAIN();
