#include <benchmark/benchmark.h>

#include <noethkit/bound_expr.hpp>
#include <noethkit/bounds.hpp>

using namespace noethkit;

static void BM_bound_canonicalize(benchmark::State& state) {
    for (auto _ : state) {
        bound_expr b = bound_expr::pow_of(integer(41482), integer(4)) *
                       bound_expr::pow_of(integer(12), integer(134217728));
        benchmark::DoNotOptimize(b.str());
    }
}
BENCHMARK(BM_bound_canonicalize);

static void BM_bound_compare(benchmark::State& state) {
    bound_expr lhs = bound_expr::pow_of(integer(2), integer(268435456));
    bound_expr rhs = bound_expr::pow_of(integer(2), integer(268435456)) *
                     bound_expr::pow_of(integer(2), integer(1));
    for (auto _ : state) {
        auto order = bound_cmp(lhs, rhs);
        benchmark::DoNotOptimize(order);
    }
}
BENCHMARK(BM_bound_compare);

static void BM_main_bound(benchmark::State& state) {
    bound_params p{2, 2, 3, 3};
    for (auto _ : state) {
        bound_expr b = main_bound(p);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_main_bound);

static void BM_proof_chain(benchmark::State& state) {
    bound_params p{static_cast<unsigned>(state.range(0)), static_cast<unsigned>(state.range(0)),
                   3, 3};
    for (auto _ : state) {
        auto report = verify_main_proof_chain(p);
        benchmark::DoNotOptimize(report.all_true());
    }
}
BENCHMARK(BM_proof_chain)->Arg(1)->Arg(2);

static void BM_induction_ladder(benchmark::State& state) {
    bound_params p{2, 2, 2, 2};
    for (auto _ : state) {
        auto report = induction_ladder(p, 2);
        benchmark::DoNotOptimize(report.within_main);
    }
}
BENCHMARK(BM_induction_ladder);

BENCHMARK_MAIN();
