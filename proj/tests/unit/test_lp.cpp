#include "infonomics/lp.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace infonomics;
using R = Rational;

TEST_CASE("textbook LP") {
    // max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
    LinearProgram<R> lp(2);
    lp.objective = {R(3), R(5)};
    lp.add({R(1), R(0)}, Sense::LessEq, R(4));
    lp.add({R(0), R(2)}, Sense::LessEq, R(12));
    lp.add({R(3), R(2)}, Sense::LessEq, R(18));
    auto s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == 36);
    CHECK(s.x == std::vector<R>{R(2), R(6)});
}

TEST_CASE("equalities, lower bounds and statuses") {
    LinearProgram<double> lp(2);
    lp.objective = {-1.0, -1.0};
    lp.add({1.0, 1.0}, Sense::GreaterEq, 2.0);
    lp.add({1.0, -1.0}, Sense::Equal, 1.0);
    auto s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == doctest::Approx(-2.0));
    CHECK(s.x[0] == doctest::Approx(1.5));

    LinearProgram<double> inf(1);
    inf.add({1.0}, Sense::LessEq, 1.0);
    inf.add({1.0}, Sense::GreaterEq, 2.0);
    CHECK(solve_lp(inf).status == LpStatus::Infeasible);

    LinearProgram<double> unb(2);
    unb.objective = {1.0, 0.0};
    unb.add({1.0, -1.0}, Sense::LessEq, 1.0);
    CHECK(solve_lp(unb).status == LpStatus::Unbounded);

    // Negative right-hand side gets flipped internally.
    LinearProgram<R> neg(1);
    neg.objective = {R(-1)};
    neg.add({R(-1)}, Sense::LessEq, R(-3));
    auto n = solve_lp(neg);
    REQUIRE(n.status == LpStatus::Optimal);
    CHECK(n.x[0] == 3);
}

TEST_CASE("degenerate vertices do not cycle") {
    // Beale's example cycles under the textbook rule.
    LinearProgram<R> lp(4);
    lp.objective = {R(3, 4), R(-150), R(1, 50), R(-6)};
    lp.add({R(1, 4), R(-60), R(-1, 25), R(9)}, Sense::LessEq, R(0));
    lp.add({R(1, 2), R(-90), R(-1, 50), R(3)}, Sense::LessEq, R(0));
    lp.add({R(0), R(0), R(1), R(0)}, Sense::LessEq, R(1));
    auto s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == R(1, 20));
}

TEST_CASE("feasibility of random stochastic systems") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 50; ++trial) {
        // x >= 0 with A x = A x0 is always feasible.
        auto a = fixtures::random_stochastic(rng, 3, 5);
        auto x0 = fixtures::random_simplex(rng, 5);
        LinearProgram<double> lp(5);
        for (const auto& row : a) {
            double rhs = 0;
            for (int k = 0; k < 5; ++k) rhs += row[k] * x0[k];
            lp.add(row, Sense::Equal, rhs);
        }
        auto s = solve_lp(lp);
        REQUIRE(s.status == LpStatus::Optimal);
        for (const auto& row : a) {
            double lhs = 0, rhs = 0;
            for (int k = 0; k < 5; ++k) {
                lhs += row[k] * s.x[k];
                rhs += row[k] * x0[k];
            }
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
    }
}

TEST_CASE("floating and exact solvers agree on obedience LPs") {
    // Random persuasion-style programs used to trip the floating pivot choice.
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t ns = 2 + trial % 3, na = 2 + (trial / 3) % 5, nv = ns * na;
        auto prior = fixtures::random_simplex(rng, ns, 0.02);
        Matrix<double> ur(na, std::vector<double>(ns)), us = ur;
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t s = 0; s < ns; ++s) {
                ur[a][s] = u(rng);
                us[a][s] = u(rng);
            }
        LinearProgram<double> fl(nv);
        LinearProgram<R> ex(nv);
        fl.objective.assign(nv, 0.0);
        ex.objective.assign(nv, R(0));
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t s = 0; s < ns; ++s) {
                fl.objective[a * ns + s] = prior[s] * us[a][s];
                ex.objective[a * ns + s] = R(prior[s]) * R(us[a][s]);
            }
        for (std::size_t s = 0; s < ns; ++s) {
            std::vector<double> row(nv, 0.0);
            std::vector<R> rrow(nv, R(0));
            for (std::size_t a = 0; a < na; ++a) row[a * ns + s] = 1, rrow[a * ns + s] = 1;
            fl.add(row, Sense::Equal, 1.0);
            ex.add(rrow, Sense::Equal, R(1));
        }
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t b = 0; b < na; ++b) {
                if (a == b) continue;
                std::vector<double> row(nv, 0.0);
                std::vector<R> rrow(nv, R(0));
                for (std::size_t s = 0; s < ns; ++s) {
                    row[a * ns + s] = prior[s] * (ur[a][s] - ur[b][s]);
                    rrow[a * ns + s] = R(prior[s]) * (R(ur[a][s]) - R(ur[b][s]));
                }
                fl.add(row, Sense::GreaterEq, 0.0);
                ex.add(rrow, Sense::GreaterEq, R(0));
            }
        auto f = solve_lp(fl);
        auto e = solve_lp(ex);
        REQUIRE(f.status == LpStatus::Optimal);
        REQUIRE(e.status == LpStatus::Optimal);
        CHECK(std::abs(f.value - e.value.convert_to<double>()) < 1e-9);
    }
}
