#pragma once
// Shared fixtures and random instance generators for the unit and acceptance suites.
#include "infonomics/knowledge.hpp"
#include "infonomics/signals.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using infonomics::EventSet;
using infonomics::Matrix;
using infonomics::Partition;
using infonomics::PartitionModel;
using infonomics::Rational;

inline std::vector<std::string> numbered_states(std::size_t n) {
    std::vector<std::string> s;
    for (std::size_t i = 1; i <= n; ++i) s.push_back(std::to_string(i));
    return s;
}

// Partitions written with 1-based state numbers, as on paper.
inline Partition one_based(const std::vector<std::vector<std::size_t>>& blocks) {
    Partition p;
    for (const auto& b : blocks) {
        infonomics::Block out;
        for (auto s : b) out.push_back(s - 1);
        p.push_back(out);
    }
    return p;
}

template <class T>
PartitionModel<T> uniform_model(std::size_t n, const std::vector<std::vector<std::vector<std::size_t>>>& parts) {
    std::vector<T> prior(n, T(1) / T(static_cast<long>(n)));
    std::vector<Partition> ps;
    for (const auto& p : parts) ps.push_back(one_based(p));
    return PartitionModel<T>(numbered_states(n), prior, ps);
}

// Two agents on six states; the running example of the knowledge chapter.
template <class T>
PartitionModel<T> six_state_model() {
    return uniform_model<T>(6, {{{1, 2, 3}, {4, 5}, {6}}, {{1, 2}, {3, 4}, {5}, {6}}});
}

template <class T>
PartitionModel<T> bob_carly_model() {
    return uniform_model<T>(9, {{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}, {{1, 2, 3, 4}, {5, 6, 7, 8}, {9}}});
}

template <class T>
EventSet event_of(const PartitionModel<T>& m, const std::vector<std::size_t>& one_based_states) {
    std::vector<std::size_t> idx;
    for (auto s : one_based_states) idx.push_back(s - 1);
    return m.event(idx);
}

inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n, double floor = 0.0) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = e(rng) + floor;
    double s = std::accumulate(v.begin(), v.end(), 0.0);
    for (auto& x : v) x /= s;
    return v;
}

inline Matrix<double> random_stochastic(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double floor = 0.0) {
    Matrix<double> m;
    for (std::size_t i = 0; i < rows; ++i) m.push_back(random_simplex(rng, cols, floor));
    return m;
}

// Small-denominator random rationals summing to one.
inline std::vector<Rational> random_rational_simplex(std::mt19937_64& rng, std::size_t n, int max_weight = 6,
                                                     int min_weight = 1) {
    std::uniform_int_distribution<int> d(min_weight, max_weight);
    std::vector<int> w(n);
    int total = 0;
    for (auto& x : w) total += (x = d(rng));
    if (total == 0) {
        w[0] = 1;
        total = 1;
    }
    std::vector<Rational> out;
    for (int x : w) out.emplace_back(x, total);
    return out;
}

inline Matrix<double> multiply(const Matrix<double>& a, const Matrix<double>& b) {
    Matrix<double> c(a.size(), std::vector<double>(b.front().size(), 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[k].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

// Random partition of {0..n-1} into at most max_blocks blocks.
inline Partition random_partition(std::mt19937_64& rng, std::size_t n, std::size_t max_blocks) {
    std::uniform_int_distribution<std::size_t> d(0, max_blocks - 1);
    std::vector<infonomics::Block> blocks(max_blocks);
    for (std::size_t s = 0; s < n; ++s) blocks[d(rng)].push_back(s);
    Partition p;
    for (auto& b : blocks)
        if (!b.empty()) p.push_back(b);
    return p;
}

}  // namespace fixtures
