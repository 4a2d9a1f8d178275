#include "infonomics/knowledge.hpp"

#include <benchmark/benchmark.h>

#include <string>

using namespace infonomics;

namespace {

// Two agents on a chain of n states: agent 1 pairs (0,1)(2,3)..., agent 2
// pairs (1,2)(3,4)... so the meet is everything and CK takes ~n/2 rounds.
PartitionModel<double> chain(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t s = 0; s < n; ++s) labels.push_back(std::to_string(s));
    Partition p1, p2{{0}};
    for (std::size_t s = 0; s < n; s += 2) p1.push_back(s + 1 < n ? Block{s, s + 1} : Block{s});
    for (std::size_t s = 1; s < n; s += 2) p2.push_back(s + 1 < n ? Block{s, s + 1} : Block{s});
    return {labels, std::vector<double>(n, 1.0 / static_cast<double>(n)), {p1, p2}};
}

void BM_CommonKnowledge(benchmark::State& state) {
    const auto m = chain(static_cast<std::size_t>(state.range(0)));
    EventSet a(m.num_states());
    a.set();
    a.reset(0);
    for (auto _ : state) benchmark::DoNotOptimize(common_knowledge_iterated(m, a));
}

void BM_CommonPBelief(benchmark::State& state) {
    const auto m = chain(static_cast<std::size_t>(state.range(0)));
    EventSet a(m.num_states());
    a.set();
    a.reset(0);
    for (auto _ : state) benchmark::DoNotOptimize(common_p_belief(m, a, 0.4));
}

}  // namespace

BENCHMARK(BM_CommonKnowledge)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_CommonPBelief)->RangeMultiplier(4)->Range(16, 1024);
