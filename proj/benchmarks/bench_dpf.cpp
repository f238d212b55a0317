#include <benchmark/benchmark.h>

#include "dpf/report.hpp"

using namespace dpf;

static void BM_Enumerate(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate(state.range(0)));
}
BENCHMARK(BM_Enumerate)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_QuadraticField(benchmark::State& state)
{
    i64 d = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(quadratic_field(d));
}
BENCHMARK(BM_QuadraticField)->Arg(229)->Arg(32009)->Arg(4481);

static void BM_Multiplicities(benchmark::State& state)
{
    const i64 B = state.range(0);
    for (auto _ : state) {
        i64 m = 0;
        for (i64 d = 5; d < B; ++d) {
            if (!is_fundamental_discriminant(d))
                continue;
            auto cs = admissible_conductors(d, B - 1);
            if (cs.empty())
                continue;
            SelmerContext ctx(quadratic_field(d));
            for (auto& c : cs)
                m += ctx.multiplicity(c).m;
        }
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_Multiplicities)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_ClassifyField(benchmark::State& state)
{
    auto fs = enumerate_fields(state.range(0), state.range(0));
    SelmerContext ctx(quadratic_field(fs[0].resolvent.d));
    for (auto _ : state)
        benchmark::DoNotOptimize(classify(fs[0].form, ctx, fs[0].resolvent.f, Depth::full));
}
BENCHMARK(BM_ClassifyField)->Arg(148)->Arg(756)->Arg(5684)->Arg(32009)->Unit(benchmark::kMillisecond);

static void BM_ClassifyRange(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(classify_range(1, state.range(0)));
}
BENCHMARK(BM_ClassifyRange)->Arg(1499)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
