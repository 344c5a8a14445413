#include <benchmark/benchmark.h>

#include "hamgap/hamming.hpp"
#include "hamgap/number_theory.hpp"
#include "hamgap/scan.hpp"

using namespace hamgap;

namespace {

// Primes just below 2^L for L = 10, 14, 18, 22.
u64 prime_near(unsigned L) {
    u64 p = (u64{1} << L) - 1;
    while (!is_prime(p)) --p;
    return p;
}

void BM_PrimitiveRootBitmap(benchmark::State& state) {
    const u64 p = prime_near(static_cast<unsigned>(state.range(0)));
    const PrimeContext ctx(p);
    for (auto _ : state) {
        auto bm = compute_primitive_root_bitmap(p, ctx.bit_len(), ctx.least_primitive_root(), ctx.distinct_factors_pm1());
        benchmark::DoNotOptimize(bm);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p));
}
BENCHMARK(BM_PrimitiveRootBitmap)->Arg(10)->Arg(14)->Arg(18)->Arg(22);

template <DeltaEngine E>
void BM_Delta(benchmark::State& state) {
    const u64 p = prime_near(static_cast<unsigned>(state.range(0)));
    PrimeContext ctx(p);
    ctx.ensure_primitive_root_bitmap();
    for (auto _ : state) {
        auto d = delta_p(ctx, DeltaVariant::canonical(), E);
        benchmark::DoNotOptimize(d);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p));
}
BENCHMARK(BM_Delta<DeltaEngine::Dilation>)->Name("BM_DeltaDilation")->Arg(10)->Arg(14)->Arg(18)->Arg(22);
BENCHMARK(BM_Delta<DeltaEngine::Bfs>)->Name("BM_DeltaBfs")->Arg(10)->Arg(14)->Arg(18)->Arg(22);

void BM_MinWeights(benchmark::State& state) {
    const u64 p = prime_near(static_cast<unsigned>(state.range(0)));
    const PrimeContext ctx(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_weight_nonresidue(ctx));
        benchmark::DoNotOptimize(min_weight_primitive_root(ctx));
    }
}
BENCHMARK(BM_MinWeights)->Arg(14)->Arg(22)->Arg(40);

void BM_ScanWeights(benchmark::State& state) {
    ScanConfig c;
    c.lo = 3;
    c.hi = static_cast<u64>(state.range(0));
    c.compute = ComputeSet{true, true, false};
    c.tasks = static_cast<unsigned>(state.range(1));
    std::size_t rows = 0;
    for (auto _ : state) {
        auto prof = scan_profiles(c);
        rows = prof.size();
        benchmark::DoNotOptimize(prof);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows));
}
BENCHMARK(BM_ScanWeights)->Args({100000, 1})->Args({100000, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
