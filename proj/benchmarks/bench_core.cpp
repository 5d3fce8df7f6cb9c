#include <benchmark/benchmark.h>

#include "entmap/locc.hpp"
#include "entmap/measures.hpp"
#include "entmap/ordering.hpp"
#include "entmap/rng.hpp"

using namespace entmap;

namespace {

CMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
    Prng rng(seed);
    CMatrix g = rng.ginibre(n, n);
    CMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
}

void BM_HermitianEig(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const CMatrix m = random_hermitian(n, 1);
    for (auto _ : state) {
        auto eig = hermitian_eig(m);
        benchmark::DoNotOptimize(eig.values.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(9)->Arg(16)->Arg(81)->Complexity();

void BM_Negativity(benchmark::State& state) {
    const DensityMatrix rho = random_mixed({2, 2}, 3, 7);
    for (auto _ : state) benchmark::DoNotOptimize(negativity(rho).value);
}
BENCHMARK(BM_Negativity);

void BM_Concurrence(benchmark::State& state) {
    const DensityMatrix rho = random_mixed({2, 2}, 3, 7);
    for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho).value);
}
BENCHMARK(BM_Concurrence);

void BM_RelativeEntropyObjectiveScaleRestart(benchmark::State& state) {
    const DensityMatrix rho = random_separable({2, 2}, 8, 100);
    ErOptions opts;
    opts.restarts = 1;
    for (auto _ : state) {
        auto res = relative_entropy_of_entanglement(rho, opts);
        benchmark::DoNotOptimize(res.value.value);
    }
}
BENCHMARK(BM_RelativeEntropyObjectiveScaleRestart)->Unit(benchmark::kMillisecond);

void BM_ApplyLocalChannel(benchmark::State& state) {
    const DensityMatrix rho = random_mixed({2, 2}, 4, 3);
    const KrausChannel ch = random_local_channel(2, 2, 5);
    for (auto _ : state) {
        auto out = apply_local_channel(rho, ch);
        benchmark::DoNotOptimize(out.mat().entries().data());
    }
}
BENCHMARK(BM_ApplyLocalChannel);

void BM_CampaignPairwise(benchmark::State& state) {
    EnsembleParams params;
    params.dims = {2, 2};
    params.ranks = {2, 3};
    params.count = static_cast<std::size_t>(state.range(0));
    params.seed = 42;
    for (auto _ : state) {
        auto res = find_discordant(params, MeasureId::EntanglementOfFormation,
                                   MeasureId::Negativity, {});
        benchmark::DoNotOptimize(res.stats.discordant);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CampaignPairwise)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond)->Complexity();

} // namespace

BENCHMARK_MAIN();
