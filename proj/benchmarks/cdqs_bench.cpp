#include "cdqs/distance.hpp"
#include "cdqs/reductions.hpp"
#include "cdqs/zoo.hpp"

#include <benchmark/benchmark.h>

using namespace cdqs;

static void BM_PartialTrace(benchmark::State& state) {
    const int d = int(state.range(0));
    const ComplexMatrix rho = random_density_matrix(d * d, 1);
    const std::vector<int> dims = {d, d};
    for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, dims, {1}));
}
BENCHMARK(BM_PartialTrace)->Arg(4)->Arg(8)->Arg(16);

static void BM_DiamondDistance(benchmark::State& state) {
    const int d = int(state.range(0));
    const QuantumChannel a = depolarizing(0.2, d);
    const QuantumChannel b = unitary_channel(haar_random_unitary(d, 3), SystemDims::single("Q", d), SystemDims::single("Q", d));
    for (auto _ : state) benchmark::DoNotOptimize(diamond_distance(a, b).value);
}
BENCHMARK(BM_DiamondDistance)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_DecoderFidelity(benchmark::State& state) {
    const int d = int(state.range(0));
    const QuantumChannel n = depolarizing(0.3, d);
    for (auto _ : state) benchmark::DoNotOptimize(optimal_decoder_fidelity(n).f_star);
}
BENCHMARK(BM_DecoderFidelity)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_VerifyCds(benchmark::State& state) {
    const CdsProtocol p = cds_inner_product(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(verify_cds_exact(p).pass);
}
BENCHMARK(BM_VerifyCds)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_VerifyLiftedEquality(benchmark::State& state) {
    const CdqsProtocol p = cdqs_equality(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(verify_cdqs(p).pass);
}
BENCHMARK(BM_VerifyLiftedEquality)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_HaarIdentity(benchmark::State& state) {
    const ComplexMatrix r = random_density_matrix(4, 1), s = random_density_matrix(4, 2);
    for (auto _ : state) benchmark::DoNotOptimize(haar_l2_identity_check(r, s, int(state.range(0)), 3).estimate);
}
BENCHMARK(BM_HaarIdentity)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
