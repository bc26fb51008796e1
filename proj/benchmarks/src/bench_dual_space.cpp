#include <benchmark/benchmark.h>

#include <noethkit/chain.hpp>
#include <noethkit/deflicity.hpp>
#include <noethkit/local_mult.hpp>

#include <vector>

using namespace noethkit;

namespace {

chain plane() {
    return chain::make(2, 0, {{}, {}});
}

poly pp(const std::string& text) {
    arena a({var("x1"), var("x2")});
    return poly::parse(text, a);
}

} // namespace

static void BM_dual_space_dim(benchmark::State& state) {
    chain c = plane();
    leaf_point origin{{rational(0), rational(0)}};
    std::vector<poly> system = {pp("x1^2 - x2^3"), pp("x2^2")};
    unsigned order = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        unsigned long dim = dual_space_dim(c, origin, system, order);
        benchmark::DoNotOptimize(dim);
    }
}
BENCHMARK(BM_dual_space_dim)->Arg(4)->Arg(8)->Arg(16);

static void BM_mult_isolated(benchmark::State& state) {
    chain c = plane();
    leaf_point origin{{rational(0), rational(0)}};
    std::vector<poly> system = {pp("x1^3"), pp("x2^4")};
    for (auto _ : state) {
        auto r = mult_isolated(c, origin, system);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_mult_isolated);

static void BM_branch_decompose(benchmark::State& state) {
    chain c = plane();
    deflicity_problem prob{c, {{rational(0), rational(0)}},
                           {pp("(x2 - x1^2)*(x2^2 - x1^3)")}, pp("x1"), 16};
    for (auto _ : state) {
        auto branches = branch_decompose(prob);
        benchmark::DoNotOptimize(branches);
    }
}
BENCHMARK(BM_branch_decompose);

static void BM_deflicity_symbolic(benchmark::State& state) {
    chain c = plane();
    deflicity_problem prob{c, {{rational(0), rational(0)}},
                           {pp("x2*(x2 - x1^2)")}, pp("x1"), 16};
    for (auto _ : state) {
        integer v = deflicity_symbolic(prob);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_deflicity_symbolic);

static void BM_deflicity_numeric(benchmark::State& state) {
    arena a({var("x1"), var("x2"), var("eps")});
    std::vector<poly> family = {poly::parse("x1^2 - eps", a), poly::parse("x2^2 - eps", a)};
    std::vector<rational> base = {rational(0), rational(0)};
    std::vector<rational> eps = {rational(1, 1000), rational(1, 10000)};
    for (auto _ : state) {
        integer v = deflicity_numeric(family, base, eps, 0.1);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_deflicity_numeric);

BENCHMARK_MAIN();
