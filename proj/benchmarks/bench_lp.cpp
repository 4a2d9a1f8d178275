#include "infonomics/blackwell.hpp"
#include "infonomics/lp.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace infonomics;

namespace {

// Random row-stochastic matrix with small integer weights, so the exact
// instance has short denominators.
template <class T>
Matrix<T> stochastic(std::size_t rows, std::size_t cols, std::mt19937& rng) {
    std::uniform_int_distribution<int> w(1, 9);
    Matrix<T> m(rows, std::vector<T>(cols));
    for (auto& row : m) {
        int total = 0;
        std::vector<int> raw(cols);
        for (auto& x : raw) total += x = w(rng);
        for (std::size_t j = 0; j < cols; ++j) row[j] = T(raw[j]) / T(total);
    }
    return m;
}

// Diet-style program: n foods, n/2 nutrients, bounded budget.
template <class T>
LinearProgram<T> diet(std::size_t n) {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> w(1, 9);
    LinearProgram<T> lp(n);
    for (std::size_t j = 0; j < n; ++j) lp.objective.push_back(T(-w(rng)));
    for (std::size_t i = 0; i < n / 2; ++i) {
        std::vector<T> coef(n);
        for (auto& c : coef) c = T(w(rng));
        lp.add(coef, Sense::GreaterEq, T(w(rng) * 3));
    }
    lp.add(std::vector<T>(n, T(1)), Sense::LessEq, T(static_cast<int>(n)));
    return lp;
}

template <class T>
void BM_SolveLp(benchmark::State& state) {
    const auto lp = diet<T>(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_lp(lp));
}

// Garble a random signal and recover the kernel.
template <class T>
void BM_GarblingTest(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937 rng(7);
    const SignalStructure<T> q(stochastic<T>(n, n, rng));
    const auto kernel = stochastic<T>(n, n, rng);
    Matrix<T> garbled(n, std::vector<T>(n, T(0)));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) garbled[s][y] += q.matrix[s][x] * kernel[x][y];
    const SignalStructure<T> p(garbled, 1e-9);
    for (auto _ : state) benchmark::DoNotOptimize(garbling_test(q, p));
}

}  // namespace

BENCHMARK_TEMPLATE(BM_SolveLp, double)->RangeMultiplier(2)->Range(4, 32);
BENCHMARK_TEMPLATE(BM_SolveLp, Rational)->RangeMultiplier(2)->Range(4, 16);
BENCHMARK_TEMPLATE(BM_GarblingTest, double)->DenseRange(2, 6, 2);
BENCHMARK_TEMPLATE(BM_GarblingTest, Rational)->DenseRange(2, 4, 1);
