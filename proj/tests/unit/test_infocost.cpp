#include "infonomics/error.hpp"
#include "infonomics/gaussian.hpp"
#include "infonomics/infocost.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace infonomics;

namespace {

std::vector<double> binary(double q) { return {q, 1 - q}; }

double uniform_kl(const std::vector<double>& p) { return kl(p, std::vector<double>(p.size(), 1.0 / p.size())); }

SignalStructure<double> random_signal(std::mt19937_64& rng, std::size_t n, std::size_t k) {
    return SignalStructure<double>(fixtures::random_stochastic(rng, n, k, 0.02));
}

Matrix<double> random_beta(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 2.0);
    Matrix<double> b(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) b[i][j] = u(rng);
    return b;
}

}  // namespace

TEST_CASE("entropy") {
    for (std::size_t n = 1; n <= 8; ++n) CHECK(entropy(std::vector<double>(n, 1.0 / n)) == doctest::Approx(std::log(n)));
    CHECK(entropy({0.0, 1.0, 0.0}) == 0.0);
    CHECK(entropy(binary(0.5)) == doctest::Approx(std::log(2.0)));
    CHECK(entropy_gaussian(1.0) == doctest::Approx(0.5 * std::log(2 * std::numbers::pi) + 0.5));
    CHECK_THROWS_AS(entropy({-0.1, 1.1}), ValidationError);
    CHECK_THROWS_AS(entropy_gaussian(0.0), ValidationError);
}

TEST_CASE("entropy identities on random beliefs") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = fixtures::random_simplex(rng, 5);
        CHECK(entropy(p) == doctest::Approx(std::log(5.0) - uniform_kl(p)).epsilon(1e-12));

        // Chain rule and conditioning on a random joint over 3 x 4 outcomes.
        auto joint = fixtures::random_simplex(rng, 12);
        std::vector<double> px(3, 0.0), py(4, 0.0);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                px[i] += joint[i * 4 + j];
                py[j] += joint[i * 4 + j];
            }
        double h_y_given_x = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            std::vector<double> row(joint.begin() + i * 4, joint.begin() + i * 4 + 4);
            for (auto& v : row) v /= px[i];
            h_y_given_x += px[i] * entropy(row);
        }
        CHECK(entropy(joint) == doctest::Approx(entropy(px) + h_y_given_x).epsilon(1e-12));
        CHECK(h_y_given_x <= entropy(py) + 1e-12);

        std::vector<double> indep;
        for (double a : px)
            for (double b : py) indep.push_back(a * b);
        CHECK(entropy(indep) == doctest::Approx(entropy(px) + entropy(py)).epsilon(1e-12));
    }
}

TEST_CASE("KL divergence") {
    auto p = binary(0.3);
    CHECK(kl(p, p) == 0.0);
    CHECK(kl({1.0, 0.0}, {0.0, 1.0}) == std::numeric_limits<double>::infinity());
    CHECK(kl({0.0, 1.0}, {0.5, 0.5}) == doctest::Approx(std::log(2.0)));
    // Natural logs: the base-10 display values 0.021 and 0.025 become 0.0487 and 0.0566.
    CHECK(kl({2.0 / 3, 1.0 / 3}, {0.8, 0.2}) == doctest::Approx(2.0 / 3 * std::log(5.0 / 6) + std::log(5.0 / 3) / 3));
    CHECK(kl({2.0 / 3, 1.0 / 3}, {0.5, 0.5}) == doctest::Approx(2.0 / 3 * std::log(4.0 / 3) + std::log(2.0 / 3) / 3));
    CHECK(kl_gaussian_means(0.0, 2.0, 2.0) == doctest::Approx(1.0));
    CHECK(kl_gaussian_means(1.0, -1.0, 0.5) == kl_gaussian_means(-1.0, 1.0, 0.5));

    // Convexity: D(l p1 + (1-l) p2 || l q1 + (1-l) q2) <= l D(p1||q1) + (1-l) D(p2||q2).
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> lam(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto p1 = fixtures::random_simplex(rng, 4, 0.01), p2 = fixtures::random_simplex(rng, 4, 0.01);
        auto q1 = fixtures::random_simplex(rng, 4, 0.01), q2 = fixtures::random_simplex(rng, 4, 0.01);
        double l = lam(rng);
        std::vector<double> pm(4), qm(4);
        for (int i = 0; i < 4; ++i) {
            pm[i] = l * p1[i] + (1 - l) * p2[i];
            qm[i] = l * q1[i] + (1 - l) * q2[i];
        }
        CHECK(kl(pm, qm) <= l * kl(p1, q1) + (1 - l) * kl(p2, q2) + 1e-12);
        CHECK(kl(p1, q1) >= 0.0);
    }
}

TEST_CASE("uniformly posterior-separable costs") {
    std::vector<double> uniform{0.5, 0.5};
    BeliefDistribution<double> point{{uniform}, {1.0}};
    CHECK(cost_entropy_reduction(uniform, point) == 0.0);
    CHECK(cost_variance_reduction(uniform, point) == 0.0);

    // Binary symmetric signal with accuracy 0.75.
    BeliefDistribution<double> split{{binary(0.75), binary(0.25)}, {0.5, 0.5}};
    CHECK(cost_entropy_reduction(uniform, split) == doctest::Approx(std::log(2.0) - entropy(binary(0.75))));
    CHECK(cost_entropy_reduction(uniform, split) == doctest::Approx(0.1308).epsilon(1e-3));
    // Var under values {0,1}: 1/4 -> 3/16.
    CHECK(cost_variance_reduction(uniform, split) == doctest::Approx(0.25 - 0.1875));

    BeliefDistribution<double> bad{{binary(1.0)}, {1.0}};
    CHECK_THROWS_AS(cost_entropy_reduction(uniform, bad), ValidationError);

    // C_Ent equals the expected KL from the prior.
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        auto prior = fixtures::random_simplex(rng, 3, 0.05);
        auto dist = induced_posteriors(prior, random_signal(rng, 3, 4));
        double ekl = 0;
        for (std::size_t i = 0; i < dist.size(); ++i) ekl += dist.weights[i] * kl(dist.support[i], prior);
        CHECK(cost_entropy_reduction(prior, dist) == doctest::Approx(ekl).epsilon(1e-10));
    }
}

TEST_CASE("Gaussian cost closed forms") {
    for (double vt : {0.5, 1.0, 3.0})
        for (double ve : {0.1, 1.0, 4.0}) {
            double post = scalar_posterior({0.0, vt, ve}, 0.0).variance;
            CHECK(std::abs(entropy_gaussian(vt) - entropy_gaussian(post) - 0.5 * std::log((vt + ve) / ve)) < 1e-12);
            CHECK(std::abs(vt - post - vt * vt / (vt + ve)) < 1e-12);
        }
}

TEST_CASE("Bregman divergences") {
    std::mt19937_64 rng(67);
    BeliefFunction h = [](const std::vector<double>& p) { return entropy(p); };
    for (int trial = 0; trial < 50; ++trial) {
        auto p = fixtures::random_simplex(rng, 3, 0.05), q = fixtures::random_simplex(rng, 3, 0.05);
        CHECK(bregman(h, p, q) == doctest::Approx(kl(q, p)).epsilon(1e-6));
        CHECK(bregman_entropy(p, q) == doctest::Approx(kl(q, p)).epsilon(1e-12));
        CHECK(bregman(h, p, q) >= -1e-9);
    }
    CHECK(bregman(h, binary(0.4), binary(0.4)) == doctest::Approx(0.0));
    CHECK(bregman_variance(binary(0.3), binary(0.6), {1.0, 0.0}) == doctest::Approx(0.09));

    BeliefFunction var = [](const std::vector<double>& p) { return belief_variance(p, {1.0, 0.0}); };
    CHECK(bregman(var, binary(0.3), binary(0.6)) == doctest::Approx(0.09).epsilon(1e-8));

    // Expected divergence from the prior equals the UPS cost.
    auto prior = binary(0.4);
    auto dist = induced_posteriors(prior, SignalStructure<double>({{0.7, 0.2, 0.1}, {0.2, 0.3, 0.5}}));
    double eb = 0, phi_gap = h(prior);
    for (std::size_t i = 0; i < dist.size(); ++i) {
        eb += dist.weights[i] * bregman(h, prior, dist.support[i]);
        phi_gap -= dist.weights[i] * h(dist.support[i]);
    }
    CHECK(eb == doctest::Approx(phi_gap).epsilon(1e-6));

    BeliefFunction convex = [](const std::vector<double>& p) { return p[0] * p[0]; };
    CHECK_THROWS_AS(bregman(convex, binary(0.2), binary(0.8)), ValidationError);
}

TEST_CASE("table-defined uncertainty measures") {
    auto phi = binary_phi_from_table({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
    CHECK(phi(binary(0.25)) == doctest::Approx(0.5));
    CHECK_THROWS_AS(binary_phi_from_table({0.0, 0.5, 1.0}, {1.0, 0.0, 1.0}), ValidationError);

    CostSpec spec;
    spec.kind = CostKind::BregmanOfPhi;
    spec.phi = phi;
    BeliefDistribution<double> split{{binary(0.75), binary(0.25)}, {0.5, 0.5}};
    CHECK(ups_cost(spec, {0.5, 0.5}, split) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("posterior-separable cost in the likelihood form") {
    Matrix<double> beta{{0.0, 1.0}, {1.0, 0.0}};
    CHECK(pst_cost(uninformative_signal<double>(2), beta) == 0.0);
    SignalStructure<double> s({{0.75, 0.25}, {0.25, 0.75}});
    CHECK(pst_cost(s, beta) == doctest::Approx(2 * kl({0.75, 0.25}, {0.25, 0.75})));
    CHECK_THROWS_AS(pst_cost(revealing_signal<double>(2), beta), ValidationError);
    CHECK_THROWS_AS(pst_cost(s, Matrix<double>{{0.0, -1.0}, {1.0, 0.0}}), ValidationError);

    // Gaussian: beta = 1/(t - t')^2 gives the precision times the number of ordered pairs.
    std::vector<double> thetas{0.0, 1.0, 3.0};
    Matrix<double> inv(3, std::vector<double>(3, 0.0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) inv[i][j] = 1.0 / std::pow(thetas[i] - thetas[j], 2);
    CHECK(pst_cost_gaussian(thetas, inv, 0.5) == doctest::Approx(6 * (1 / (2 * 0.5))));

    // Two independent draws of P form the four-outcome signal.
    SignalStructure<double> p({{0.75, 0.25}, {0.25, 0.75}});
    auto pp = product_signal(p, p);
    Matrix<double> q{{9.0 / 16, 3.0 / 16, 3.0 / 16, 1.0 / 16}, {1.0 / 16, 3.0 / 16, 3.0 / 16, 9.0 / 16}};
    for (int s2 = 0; s2 < 2; ++s2)
        for (int x = 0; x < 4; ++x) CHECK(pp.matrix[s2][x] == q[s2][x]);

    auto d1 = dilute(p, 1.0);
    CHECK(d1.matrix[0].back() == 0.0);
    auto d0 = dilute(p, 0.0);
    CHECK(d0.matrix[0] == std::vector<double>{0.0, 0.0, 1.0});
}

TEST_CASE("PST axioms and C_Ent non-additivity") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> a(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto s1 = random_signal(rng, 3, 3), s2 = random_signal(rng, 3, 2);
        auto beta = random_beta(rng, 3);
        CHECK(std::abs(pst_cost(product_signal(s1, s2), beta) - pst_cost(s1, beta) - pst_cost(s2, beta)) < 1e-10);
        double alpha = a(rng);
        CHECK(std::abs(pst_cost(dilute(s1, alpha), beta) - alpha * pst_cost(s1, beta)) < 1e-10);
    }
    std::vector<double> prior{0.5, 0.5};
    SignalStructure<double> p({{0.75, 0.25}, {0.25, 0.75}});
    double once = cost_entropy_reduction(prior, induced_posteriors(prior, p));
    double twice = cost_entropy_reduction(prior, induced_posteriors(prior, product_signal(p, p)));
    CHECK(2 * once - twice > 1e-3);
}

TEST_CASE("UPS costs respect the Blackwell order") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 100; ++trial) {
        auto prior = fixtures::random_simplex(rng, 3, 0.05);
        auto s = random_signal(rng, 3, 4);
        SignalStructure<double> g(fixtures::multiply(s.matrix, fixtures::random_stochastic(rng, 4, 3)));
        auto fs = induced_posteriors(prior, s), fg = induced_posteriors(prior, g);
        CHECK(cost_entropy_reduction(prior, fs) >= cost_entropy_reduction(prior, fg) - 1e-12);
        CHECK(cost_variance_reduction(prior, fs) >= cost_variance_reduction(prior, fg) - 1e-12);
    }
}
