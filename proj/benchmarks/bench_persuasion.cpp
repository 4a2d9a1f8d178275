#include "infonomics/persuasion.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>

using namespace infonomics;

namespace {

template <class T>
PersuasionInstance<T> instance(std::size_t states, std::size_t actions) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> w(0, 9);
    PersuasionInstance<T> inst;
    for (std::size_t s = 0; s < states; ++s) {
        inst.states.push_back("s" + std::to_string(s));
        inst.prior.push_back(T(1) / T(static_cast<int>(states)));
    }
    for (std::size_t a = 0; a < actions; ++a) inst.actions.push_back("a" + std::to_string(a));
    inst.u_receiver.assign(actions, std::vector<T>(states));
    inst.u_sender.assign(actions, std::vector<T>(states));
    for (std::size_t a = 0; a < actions; ++a)
        for (std::size_t s = 0; s < states; ++s) {
            inst.u_receiver[a][s] = T(w(rng));
            inst.u_sender[a][s] = T(w(rng));
        }
    return inst;
}

template <class T>
void BM_OptimalSignal(benchmark::State& state) {
    const auto inst = instance<T>(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(optimal_signal(inst));
}

void BM_Concavify(benchmark::State& state) {
    const auto inst = instance<double>(2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(concavify_1d(inst));
}

}  // namespace

BENCHMARK_TEMPLATE(BM_OptimalSignal, double)->ArgsProduct({{2, 3, 4}, {2, 4, 6}});
BENCHMARK_TEMPLATE(BM_OptimalSignal, Rational)->ArgsProduct({{2, 3}, {2, 4}});
BENCHMARK(BM_Concavify)->RangeMultiplier(2)->Range(2, 32);
