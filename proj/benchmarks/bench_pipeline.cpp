#include <benchmark/benchmark.h>

#include <eivarx/eivarx.hpp>

using namespace eivarx;

namespace {

const DifferenceEquation kExample1(Vector{{-1.5, 0.7}}, Vector{{1.0, 0.5}}, 1);

TimeSeriesPair dataset(std::size_t n) {
    return simulate_dataset(kExample1, generate_prbs(prbs_bits_for_length(n), n), {0.2, 0.1}, 1);
}

}  // namespace

static void BM_Prbs(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(generate_prbs(prbs_bits_for_length(n), n));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Prbs)->Arg(1023)->Arg(65535);

static void BM_YuleWalker(benchmark::State& state) {
    const Vector a{{-1.5, 0.7}};
    const int lag = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(yule_walker_acvf(a, 0.2, lag));
}
BENCHMARK(BM_YuleWalker)->Arg(5)->Arg(50);

static void BM_StackCovariance(benchmark::State& state) {
    const TimeSeriesPair s = dataset(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sample_covariance(stack(s, 5)));
}
BENCHMARK(BM_StackCovariance)->Arg(1023)->Arg(8191);

static void BM_InnerIteration(benchmark::State& state) {
    const SampleCovariance s = sample_covariance(stack(dataset(4095), 5));
    PipelineConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(inner_iteration(s, 4, cfg));
}
BENCHMARK(BM_InnerIteration)->Unit(benchmark::kMillisecond);

static void BM_Identify(benchmark::State& state) {
    const TimeSeriesPair s = dataset(static_cast<std::size_t>(state.range(0)));
    PipelineConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(identify(s, cfg));
}
BENCHMARK(BM_Identify)->Arg(1023)->Arg(4095)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
