#include "infonomics/blackwell.hpp"
#include "infonomics/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace infonomics;
using R = Rational;

namespace {

SignalStructure<R> p_signal() { return SignalStructure<R>({{R(3, 4), R(1, 4)}, {R(1, 4), R(3, 4)}}); }

SignalStructure<R> q_signal() {
    return SignalStructure<R>(
        {{R(9, 16), R(3, 16), R(3, 16), R(1, 16)}, {R(1, 16), R(3, 16), R(3, 16), R(9, 16)}});
}

template <class T>
SignalStructure<T> symmetric(T q) {
    return SignalStructure<T>({{q, 1 - q}, {1 - q, q}});
}

template <class T>
DecisionProblem<T> matching(std::size_t n) {
    Matrix<T> u(n, std::vector<T>(n, T(0)));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = T(1);
    return DecisionProblem<T>(u);
}

std::size_t find_point(const Matrix<R>& support, const std::vector<R>& point) {
    auto it = std::find(support.begin(), support.end(), point);
    REQUIRE(it != support.end());
    return static_cast<std::size_t>(it - support.begin());
}

}  // namespace

TEST_CASE("garbling certificates") {
    auto cert = garbling_test(q_signal(), p_signal());
    REQUIRE(cert.has_value());
    CHECK(cert->kernel == Matrix<R>{{R(1), R(0)}, {R(1), R(0)}, {R(0), R(1)}, {R(0), R(1)}});
    CHECK(cert->residual == 0.0);
    CHECK_FALSE(garbling_test(p_signal(), q_signal()).has_value());

    // Anything is a garbling of the identity, through the signal itself.
    SignalStructure<R> any({{R(1, 5), R(3, 5), R(1, 5)}, {R(1, 2), R(1, 4), R(1, 4)}});
    auto id = garbling_test(revealing_signal<R>(2), any);
    REQUIRE(id.has_value());
    CHECK(id->kernel == any.matrix);

    CHECK(garbling_test(symmetric(R(4, 5)), symmetric(R(3, 5))).has_value());
    CHECK_FALSE(garbling_test(symmetric(R(3, 5)), symmetric(R(4, 5))).has_value());
    CHECK_THROWS_AS(garbling_test(revealing_signal<R>(3), any), ValidationError);
}

TEST_CASE("value of information") {
    std::vector<R> uniform{R(1, 2), R(1, 2)};
    for (R q : {R(3, 5), R(3, 4), R(9, 10)}) {
        auto v = decision_value(uniform, symmetric(q), matching<R>(2));
        CHECK(v.gross == q);
        CHECK(v.value == q - R(1, 2));
    }
    CHECK(decision_value(uniform, uninformative_signal<R>(2), matching<R>(2)).value == 0);
    // A second independent draw is worthless for matching the state.
    CHECK(decision_value(uniform, p_signal(), matching<R>(2)).value ==
          decision_value(uniform, q_signal(), matching<R>(2)).value);
}

TEST_CASE("feasible state-to-action maps") {
    auto s = symmetric(R(3, 4));
    auto self = feasible_test(s, s.matrix);
    REQUIRE(self.has_value());
    CHECK(*self == Matrix<R>{{R(1), R(0)}, {R(0), R(1)}});

    Matrix<R> d{{R(1, 3), R(2, 3)}, {R(1, 2), R(1, 2)}};
    auto rev = feasible_test(revealing_signal<R>(2), d);
    REQUIRE(rev.has_value());
    CHECK(*rev == d);
    CHECK(feasible_test(s, d).has_value());
    CHECK_FALSE(feasible_test(s, Matrix<R>{{R(1), R(0)}, {R(0), R(1)}}).has_value());

    Matrix<R> constant{{R(1, 4), R(3, 4)}, {R(1, 4), R(3, 4)}};
    CHECK(feasible_test(s, constant).has_value());
}

TEST_CASE("mean-preserving spreads") {
    std::vector<R> uniform{R(1, 2), R(1, 2)};
    auto fp = induced_posteriors(uniform, p_signal());
    auto fq = induced_posteriors(uniform, q_signal());
    auto cert = mps_test(fq, fp);
    REQUIRE(cert.has_value());
    CHECK(cert->residual == 0.0);
    std::size_t g_hi = find_point(fp.support, {R(3, 4), R(1, 4)});
    std::size_t g_lo = find_point(fp.support, {R(1, 4), R(3, 4)});
    std::size_t f_hi = find_point(fq.support, {R(9, 10), R(1, 10)});
    std::size_t f_mid = find_point(fq.support, {R(1, 2), R(1, 2)});
    std::size_t f_lo = find_point(fq.support, {R(1, 10), R(9, 10)});
    CHECK(cert->kernel[g_hi][f_hi] == R(5, 8));
    CHECK(cert->kernel[g_hi][f_mid] == R(3, 8));
    CHECK(cert->kernel[g_lo][f_lo] == R(5, 8));
    CHECK(cert->kernel[g_lo][f_mid] == R(3, 8));

    CHECK(mps_test(fp, fp).has_value());
    CHECK_FALSE(mps_test(fp, fq).has_value());
    CHECK(convex_order_test(fq, fp));
    CHECK(convex_order_test(fp, fp));

    BeliefDistribution<R> at_prior{{uniform}, {R(1)}};
    auto revealed = induced_posteriors(uniform, revealing_signal<R>(2));
    CHECK_FALSE(mps_test(at_prior, revealed).has_value());
    CHECK(mps_test(revealed, at_prior).has_value());
}

TEST_CASE("Blackwell comparisons from the text") {
    std::vector<R> uniform{R(1, 2), R(1, 2)};
    auto c = blackwell_compare(uniform, p_signal(), q_signal());
    CHECK(c.second_dominates);
    CHECK(c.second_strictly);
    CHECK_FALSE(c.first_dominates);

    SignalStructure<R> fine({{R(2, 3), R(1, 3)}, {R(1, 4), R(3, 4)}});
    SignalStructure<R> coarse({{R(1, 3), R(1, 2), R(1, 6)}, {R(1, 8), R(1, 2), R(3, 8)}});
    auto e = blackwell_compare(uniform, fine, coarse);
    CHECK(e.first_dominates);
    CHECK(e.first_strictly);

    std::vector<R> third(3, R(1, 3));
    SignalStructure<R> s1({{R(1), R(0)}, {R(0), R(1)}, {R(0), R(1)}});
    SignalStructure<R> s2({{R(1), R(0)}, {R(0), R(1)}, {R(1), R(0)}});
    auto inc = blackwell_compare(third, s1, s2);
    CHECK(inc.incomparable);
    DecisionProblem<R> u(Matrix<R>{{R(1), R(0), R(0)}, {R(0), R(1), R(1)}});
    DecisionProblem<R> up(Matrix<R>{{R(1), R(0), R(1)}, {R(0), R(1), R(0)}});
    CHECK(decision_value(third, s1, u).value > decision_value(third, s2, u).value);
    CHECK(decision_value(third, s2, up).value > decision_value(third, s1, up).value);

    // Relabeling realizations gives an equivalent signal.
    SignalStructure<R> swapped({{R(1, 4), R(3, 4)}, {R(3, 4), R(1, 4)}});
    CHECK(blackwell_compare(uniform, p_signal(), swapped).equivalent);
}

TEST_CASE("Blackwell theorem on random instances") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::size_t> dim(2, 4);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = dim(rng), k = dim(rng), m = dim(rng);
        SignalStructure<double> sig(fixtures::random_stochastic(rng, n, k, 0.02));
        auto kernel = fixtures::random_stochastic(rng, k, m, 0.02);
        SignalStructure<double> garbled(fixtures::multiply(sig.matrix, kernel));

        auto cmp = blackwell_compare(fixtures::random_simplex(rng, n, 0.05), sig, garbled);
        CHECK(cmp.first_dominates);
        REQUIRE(cmp.forward.has_value());
        CHECK(cmp.forward->residual < 1e-9);

        for (int p = 0; p < 5; ++p) {
            auto prior = fixtures::random_simplex(rng, n, 0.05);
            auto na = dim(rng);
            DecisionProblem<double> prob(fixtures::random_stochastic(rng, na, n));
            auto vf = decision_value(prior, sig, prob), vg = decision_value(prior, garbled, prob);
            CHECK(vf.value >= vg.value - 1e-12);
            CHECK(vg.value >= -1e-12);

            // Garbling implies the spread certificate on posteriors.
            CHECK(mps_test(induced_posteriors(prior, sig), induced_posteriors(prior, garbled)).has_value());
        }

        // Every map feasible under the garbled signal stays feasible.
        for (int p = 0; p < 3; ++p) {
            auto alpha = fixtures::random_stochastic(rng, m, 3);
            auto d = fixtures::multiply(garbled.matrix, alpha);
            CHECK(feasible_test(garbled, d).has_value());
            CHECK(feasible_test(sig, d).has_value());
        }
    }
}

TEST_CASE("convex functions respect the spread order") {
    std::mt19937_64 rng(43);
    std::normal_distribution<double> z(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        auto prior = fixtures::random_simplex(rng, 3, 0.05);
        SignalStructure<double> sig(fixtures::random_stochastic(rng, 3, 4, 0.02));
        SignalStructure<double> garbled(fixtures::multiply(sig.matrix, fixtures::random_stochastic(rng, 4, 3, 0.02)));
        auto f = induced_posteriors(prior, sig), g = induced_posteriors(prior, garbled);
        REQUIRE(convex_order_test(f, g));
        for (int h = 0; h < 200; ++h) {
            // max of five random affine functions
            Matrix<double> planes(5, std::vector<double>(4));
            for (auto& pl : planes)
                for (auto& c : pl) c = z(rng);
            auto eval = [&](const BeliefDistribution<double>& d) {
                double total = 0;
                for (std::size_t i = 0; i < d.size(); ++i) {
                    double best = -1e300;
                    for (const auto& pl : planes) {
                        double v = pl[3];
                        for (std::size_t s = 0; s < 3; ++s) v += pl[s] * d.support[i][s];
                        best = std::max(best, v);
                    }
                    total += d.weights[i] * best;
                }
                return total;
            };
            CHECK(eval(f) >= eval(g) - 1e-9);
        }
    }
}

TEST_CASE("mutual garbling means equal posterior distributions") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 30; ++trial) {
        SignalStructure<double> sig(fixtures::random_stochastic(rng, 2, 3, 0.05));
        // Permuting and splitting columns keeps the experiment equivalent.
        Matrix<double> split;
        for (const auto& row : sig.matrix) split.push_back({row[2], row[0] * 0.3, row[1], row[0] * 0.7});
        SignalStructure<double> other(split);
        auto prior = fixtures::random_simplex(rng, 2, 0.05);
        auto c = blackwell_compare(prior, sig, other);
        CHECK(c.equivalent);
        CHECK(same_distribution(induced_posteriors(prior, sig), induced_posteriors(prior, other), 1e-9));
    }
}
