#include "infonomics/error.hpp"
#include "infonomics/persuasion.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace infonomics;
using R = Rational;

namespace {

template <class T>
PersuasionInstance<T> prosecutor(T prior_guilt) {
    PersuasionInstance<T> inst;
    inst.states = {"guilty", "innocent"};
    inst.prior = {prior_guilt, 1 - prior_guilt};
    inst.actions = {"convict", "acquit"};
    inst.u_receiver = {{T(1), T(0)}, {T(0), T(1)}};
    inst.u_sender = {{T(1), T(1)}, {T(0), T(0)}};
    return inst;
}

PersuasionInstance<double> random_binary(std::mt19937_64& rng, std::size_t na) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PersuasionInstance<double> inst;
    inst.states = {"s0", "s1"};
    auto p = fixtures::random_simplex(rng, 2, 0.05);
    inst.prior = p;
    for (std::size_t a = 0; a < na; ++a) {
        inst.actions.push_back("a" + std::to_string(a));
        inst.u_receiver.push_back({u(rng), u(rng)});
        inst.u_sender.push_back({u(rng), u(rng)});
    }
    return inst;
}

// Concave hull at mu0 as the best chord between candidate beliefs. Candidates
// are the endpoints plus every receiver indifference point.
double chord_oracle(const PersuasionInstance<double>& inst, double mu0) {
    std::vector<double> pts{0.0, 1.0};
    const auto& ur = inst.u_receiver;
    for (std::size_t a = 0; a < ur.size(); ++a)
        for (std::size_t b = a + 1; b < ur.size(); ++b) {
            double d0 = ur[a][0] - ur[b][0], d1 = ur[a][1] - ur[b][1];
            if (d0 == d1) continue;
            double m = d1 / (d1 - d0);
            if (m > 0 && m < 1) pts.push_back(m);
        }
    auto v = [&](double m) { return sender_value(inst, {m, 1 - m}); };
    double best = v(mu0);
    for (double lo : pts)
        for (double hi : pts)
            if (lo <= mu0 && mu0 <= hi && lo < hi) {
                double w = (mu0 - lo) / (hi - lo);
                best = std::max(best, (1 - w) * v(lo) + w * v(hi));
            }
    return best;
}

}  // namespace

TEST_CASE("prosecutor") {
    auto inst = prosecutor(R(3, 10));
    auto sol = optimal_signal(inst);
    CHECK(sol.value == R(3, 5));
    CHECK(sol.no_information_value == 0);
    CHECK(sol.benefits);
    CHECK(sol.signal.matrix == Matrix<R>{{R(1), R(0)}, {R(3, 7), R(4, 7)}});
    CHECK(sol.realization_probability == std::vector<R>{R(3, 5), R(2, 5)});
    CHECK(sol.posteriors[0] == std::vector<R>{R(1, 2), R(1, 2)});
    CHECK(sol.posterior_action == std::vector<std::size_t>{0, 1});

    auto env = concavify_1d(inst);
    CHECK(env.mu == std::vector<R>{R(0), R(1, 2), R(1)});
    CHECK(env.value == std::vector<R>{R(0), R(1), R(1)});
    for (R m : {R(0), R(1, 10), R(3, 10), R(1, 2), R(4, 5), R(1)}) CHECK(env(m) == std::min(R(2 * m), R(1)));

    // Above one half the receiver already convicts.
    auto high = optimal_signal(prosecutor(R(3, 5)));
    CHECK(high.value == 1);
    CHECK_FALSE(high.benefits);
}

TEST_CASE("aligned and opposed preferences") {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 30; ++trial) {
        auto inst = random_binary(rng, 3);
        inst.u_sender = inst.u_receiver;
        // Full revelation is optimal when interests coincide.
        double full = inst.prior[0] * std::max({inst.u_receiver[0][0], inst.u_receiver[1][0], inst.u_receiver[2][0]}) +
                      inst.prior[1] * std::max({inst.u_receiver[0][1], inst.u_receiver[1][1], inst.u_receiver[2][1]});
        CHECK(optimal_signal(inst).value == doctest::Approx(full).epsilon(1e-9));

        for (auto& row : inst.u_sender)
            for (auto& v : row) v = -v;
        auto zs = optimal_signal(inst);
        CHECK(zs.value == doctest::Approx(zs.no_information_value).epsilon(1e-9));
        CHECK_FALSE(zs.benefits);
    }
}

TEST_CASE("LP and concavification agree") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> na(2, 4);
    for (int trial = 0; trial < 200; ++trial) {
        auto inst = random_binary(rng, na(rng));
        auto sol = optimal_signal(inst);
        auto env = concavify_1d(inst);
        CHECK(sol.value == doctest::Approx(env(inst.prior[0])).epsilon(1e-9));
        CHECK(sol.value == doctest::Approx(chord_oracle(inst, inst.prior[0])).epsilon(1e-9));
        CHECK(sol.value >= sol.no_information_value - 1e-12);
    }
}

TEST_CASE("optimal signals are Bayes plausible and obedient") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 100; ++trial) {
        PersuasionInstance<double> inst;
        std::size_t n = 2 + trial % 3, m = 2 + trial % 4;
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (std::size_t s = 0; s < n; ++s) inst.states.push_back("s" + std::to_string(s));
        inst.prior = fixtures::random_simplex(rng, n, 0.05);
        for (std::size_t a = 0; a < m; ++a) {
            inst.actions.push_back("a" + std::to_string(a));
            std::vector<double> r(n), s(n);
            for (std::size_t k = 0; k < n; ++k) {
                r[k] = u(rng);
                s[k] = u(rng);
            }
            inst.u_receiver.push_back(r);
            inst.u_sender.push_back(s);
        }
        auto sol = optimal_signal(inst);
        CHECK(sol.posteriors.size() <= std::min(n + 1, m));
        BeliefDistribution<double> dist{sol.posteriors, {}};
        for (double p : sol.realization_probability)
            if (p > 1e-12) dist.weights.push_back(p);
        REQUIRE(dist.weights.size() == dist.support.size());
        CHECK(is_bayes_plausible(inst.prior, dist, 1e-9));

        double total = 0;
        for (std::size_t k = 0; k < sol.posteriors.size(); ++k) {
            const auto& mu = sol.posteriors[k];
            std::size_t act = sol.posterior_action[k];
            double follow = 0;
            for (std::size_t s = 0; s < n; ++s) follow += mu[s] * inst.u_receiver[act][s];
            for (std::size_t b = 0; b < m; ++b) {
                double dev = 0;
                for (std::size_t s = 0; s < n; ++s) dev += mu[s] * inst.u_receiver[b][s];
                CHECK(follow >= dev - 1e-9);
            }
            for (std::size_t s = 0; s < n; ++s) total += dist.weights[k] * mu[s] * inst.u_sender[act][s];
        }
        CHECK(total == doctest::Approx(sol.value).epsilon(1e-8));
    }
}

TEST_CASE("instance validation") {
    auto inst = prosecutor(0.3);
    inst.u_sender.pop_back();
    CHECK_THROWS_AS(optimal_signal(inst), ValidationError);
    auto three = prosecutor(0.3);
    three.states.push_back("x");
    three.prior = {0.3, 0.3, 0.4};
    for (auto& row : three.u_receiver) row.push_back(0.0);
    for (auto& row : three.u_sender) row.push_back(0.0);
    CHECK_THROWS_AS(concavify_1d(three), ValidationError);
}
