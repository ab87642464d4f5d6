#include <benchmark/benchmark.h>

#include <random>

#include "kmilnor/artin_schreier.hpp"
#include "kmilnor/condition_star.hpp"
#include "kmilnor/gal_module.hpp"
#include "kmilnor/group_ring.hpp"

using namespace kmilnor;

static void BM_GroupRingMul(benchmark::State& state) {
    PrimeParams params(3, 2, 2);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::uint64_t> dist(0, 8);
    std::vector<std::uint64_t> ca(9), cb(9);
    for (auto& x : ca) x = dist(rng);
    for (auto& x : cb) x = dist(rng);
    GroupRingElement a(params, 2, ca), b(params, 2, cb);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_GroupRingMul);

static void BM_SocleMultiplier(benchmark::State& state) {
    PrimeParams params(3, 2, 1);
    GroupRingElement b(params, 1, {3, 6, 1});
    for (auto _ : state) benchmark::DoNotOptimize(socle_multiplier(b));
}
BENCHMARK(BM_SocleMultiplier);

static void BM_SmithForm8x8(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<std::uint64_t> dist(0, 8);
    std::vector<std::uint64_t> e(64);
    for (auto& x : e) x = dist(rng);
    MatrixMod A(3, 2, 8, 8, e);
    for (auto _ : state) benchmark::DoNotOptimize(smith_form(A));
}
BENCHMARK(BM_SmithForm8x8);

static void BM_FactorDegree9(benchmark::State& state) {
    FpPoly f(3, {1, 2, 0, 1, 0, 0, 2, 0, 1, 1});
    for (auto _ : state) benchmark::DoNotOptimize(factor_poly(f));
}
BENCHMARK(BM_FactorDegree9);

static void BM_DecomposeTower(benchmark::State& state) {
    std::vector<GModulePresentation> tower;
    for (std::uint32_t sp = 1; sp <= 3; ++sp) {
        std::size_t dim = 8;
        MatrixMod a(2, sp, dim, dim);
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t j = 0; j < 4; ++j) a.at(b * 4 + (j + 1) % 4, b * 4 + j) = 1;
        tower.emplace_back(PrimeParams(2, sp, 2), std::move(a));
    }
    for (auto _ : state) benchmark::DoNotOptimize(decompose_tower(tower));
}
BENCHMARK(BM_DecomposeTower);

static void BM_AsInstanceBuild(benchmark::State& state) {
    TruncatedInstance inst = enumerate_orbits(PrimeParams(2, 1, 1), 3);
    for (auto _ : state) benchmark::DoNotOptimize(build_k1_module(inst, 2));
}
BENCHMARK(BM_AsInstanceBuild);

static void BM_ConditionStarTrial(benchmark::State& state) {
    CoeffTower tower(2, 2, 5);
    StarFuzzBounds bounds;
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(fuzz_condition_star(tower, 1, bounds, seed++));
}
BENCHMARK(BM_ConditionStarTrial);

BENCHMARK_MAIN();
