#include <benchmark/benchmark.h>

#include "pdgeo/catalog.hpp"
#include "pdgeo/defects.hpp"
#include "pdgeo/jets.hpp"
#include "pdgeo/matspaces.hpp"
#include "pdgeo/rng.hpp"

using namespace pdgeo;

namespace {

MatRat random_matrix(std::size_t n, Rng& rng, long height = 50) {
    MatRat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.next_rat(height);
    return m;
}

void BM_RankExact(benchmark::State& state) {
    Rng rng(7);
    MatRat m = random_matrix(static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(rank_exact(m));
}

void BM_KernelBasis(benchmark::State& state) {
    Rng rng(11);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    MatRat m(n / 2, n);
    for (std::size_t i = 0; i < n / 2; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.next_rat(50);
    for (auto _ : state) benchmark::DoNotOptimize(kernel_basis(m));
}

void BM_JetTower(benchmark::State& state) {
    auto X = grassmannian(3, 6);
    Rng rng(13);
    RatVec p = X.general_point(rng, 2);
    const unsigned order = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(jet_tower(X, p, order));
}

void BM_SecantDim(benchmark::State& state) {
    auto X = segre({2, 2});
    for (auto _ : state) {
        Rng rng(17);
        benchmark::DoNotOptimize(secant_dim(X, 2, rng));
    }
}

void BM_DualSecondFF(benchmark::State& state) {
    auto X = grassmannian(2, 5);
    Rng rng(19);
    RatVec p = X.general_point(rng, 3);
    for (auto _ : state) {
        Rng inner(23);
        benchmark::DoNotOptimize(dual_second_ff(X, p, inner));
    }
}

void BM_CertifyConstantRank(benchmark::State& state) {
    auto S = exemplar("A_III");
    for (auto _ : state) {
        Rng rng(29);
        benchmark::DoNotOptimize(certify_constant_rank(S, 6, "randomized", rng));
    }
}

}  // namespace

BENCHMARK(BM_RankExact)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_KernelBasis)->Arg(16)->Arg(32);
BENCHMARK(BM_JetTower)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_SecantDim);
BENCHMARK(BM_DualSecondFF);
BENCHMARK(BM_CertifyConstantRank);

BENCHMARK_MAIN();
