#include "infonomics/common_learning.hpp"
#include "infonomics/learning.hpp"

#include <benchmark/benchmark.h>

using namespace infonomics;

namespace {

void BM_SequentialPosterior(benchmark::State& state) {
    const auto env = binary_environment(0.6, 0.5);
    const auto stream = sample_stream(env.density, 0, static_cast<std::size_t>(state.range(0)), 1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(sequential_posterior(env, stream));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CommonLearningIndependent(benchmark::State& state) {
    const Matrix<double> phi{{0.7, 0.3}, {0.3, 0.7}};
    const auto model = independent_model(phi, phi);
    const auto horizon = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(common_learning_sim(model, {0.5, 0.5}, 0, horizon, 0.9));
}

void BM_CommonLearningEmail(benchmark::State& state) {
    const auto model = email_twist_model(0.2, 0.8, 0.1, 6);
    const auto horizon = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(common_learning_sim(model, {0.5, 0.5}, 1, horizon, 0.95));
}

}  // namespace

BENCHMARK(BM_SequentialPosterior)->RangeMultiplier(8)->Range(64, 32768);
BENCHMARK(BM_CommonLearningIndependent)->DenseRange(10, 40, 10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CommonLearningEmail)->DenseRange(1, 3, 1)->Unit(benchmark::kMillisecond);
