#include <benchmark/benchmark.h>

#include <random>

#include "allpass/blaschke.hpp"
#include "allpass/mirror.hpp"
#include "allpass/statespace.hpp"

using namespace allpass;

namespace {

const cplx kAlpha{0.3, 0.7};
const Eigen::Vector2cd kW{cplx(0.6, 0.0), cplx(0.1, 0.79)};

PolyMatrix random_poly(Eigen::Index n, int q, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    std::vector<PolyMatrix::Coeff> coeffs;
    for (int k = 0; k <= q; ++k) coeffs.push_back(PolyMatrix::Coeff::NullaryExpr(n, n, [&] { return normal(gen); }));
    return PolyMatrix(std::move(coeffs));
}

void BM_Consecutive(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(blaschke::b2_consecutive(kAlpha, kW));
}

void BM_Polynomial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(blaschke::b2_polynomial(kAlpha, kW));
}

void BM_StateSpace(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(statespace::build_b2(kAlpha, kW));
}

void BM_DetRoots(benchmark::State& state) {
    const PolyMatrix p = random_poly(state.range(0), static_cast<int>(state.range(1)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(roots::det_roots(p));
}

void BM_MirrorAllInside(benchmark::State& state) {
    const PolyMatrix p = random_poly(state.range(0), static_cast<int>(state.range(1)), 11);
    for (auto _ : state) benchmark::DoNotOptimize(mirror::mirror_all_inside(p, Method::polynomial));
}

}  // namespace

BENCHMARK(BM_Consecutive);
BENCHMARK(BM_Polynomial);
BENCHMARK(BM_StateSpace);
BENCHMARK(BM_DetRoots)->Args({2, 2})->Args({3, 3})->Args({6, 4});
BENCHMARK(BM_MirrorAllInside)->Args({2, 2})->Args({3, 3});
BENCHMARK_MAIN();
