#include <benchmark/benchmark.h>

#include <noethkit/chain.hpp>
#include <noethkit/polynomial.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

using namespace noethkit;

namespace {

poly dense_poly(unsigned degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    poly_builder out;
    var_id x1 = var("x1"), x2 = var("x2");
    for (unsigned a = 0; a <= degree; ++a)
        for (unsigned b = 0; a + b <= degree; ++b) {
            long coeff = static_cast<long>(rng() % 19) - 9;
            if (coeff == 0) continue;
            std::vector<monomial::entry> factors;
            if (a) factors.push_back({x1, a});
            if (b) factors.push_back({x2, b});
            out.add(monomial(std::move(factors)), rational(coeff));
        }
    return out.build();
}

chain exp_chain() {
    arena a({var("x1"), var("f1")});
    return chain::make(1, 1, {{poly::parse("f1", a)}});
}

} // namespace

static void BM_poly_multiply(benchmark::State& state) {
    poly p = dense_poly(static_cast<unsigned>(state.range(0)), 11);
    poly q = dense_poly(static_cast<unsigned>(state.range(0)), 17);
    for (auto _ : state) {
        poly r = p * q;
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_poly_multiply)->Arg(4)->Arg(8)->Arg(16);

static void BM_poly_parse_print(benchmark::State& state) {
    std::string text = dense_poly(8, 23).str();
    arena a({var("x1"), var("x2")});
    for (auto _ : state) {
        poly p = poly::parse(text, a);
        benchmark::DoNotOptimize(p.str());
    }
}
BENCHMARK(BM_poly_parse_print);

static void BM_poly_eval(benchmark::State& state) {
    poly p = dense_poly(12, 31);
    std::map<var_id, rational> at{{var("x1"), rational(3, 7)}, {var("x2"), rational(-5, 11)}};
    for (auto _ : state) {
        rational v = p.eval(at);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_poly_eval);

static void BM_chain_derive(benchmark::State& state) {
    chain c = exp_chain();
    arena a({var("x1"), var("f1")});
    poly p = poly::parse("(x1 + f1)^6", a);
    for (auto _ : state) {
        poly d = derive(c, p, 1);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_chain_derive);

static void BM_chain_word(benchmark::State& state) {
    chain c = exp_chain();
    arena a({var("x1"), var("f1")});
    poly p = poly::parse("x1^2*f1 + f1^2", a);
    std::vector<unsigned> word(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) {
        poly d = iterated_derive(c, p, word);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_chain_word)->Arg(2)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
