#include "infonomics/error.hpp"
#include "infonomics/gaussian.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace infonomics;

TEST_CASE("scalar posterior") {
    auto p = scalar_posterior({0.0, 1.0, 1.0}, 2.0);
    CHECK(p.mean == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.variance == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(scalar_posterior({3.0, 2.0, 5.0}, 3.0).mean == doctest::Approx(3.0));
    auto flat = scalar_posterior({1.0, 2.0, 1e12}, 50.0);
    CHECK(flat.mean == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(flat.variance == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_THROWS_AS(scalar_posterior({0.0, 0.0, 1.0}, 0.0), ValidationError);

    // Precisions add.
    for (double vt : {0.5, 1.0, 4.0})
        for (double ve : {0.25, 1.0, 3.0}) {
            auto q = scalar_posterior({0.0, vt, ve}, 0.3);
            CHECK(1.0 / q.variance == doctest::Approx(1.0 / vt + 1.0 / ve).epsilon(1e-14));
        }
}

TEST_CASE("multivariate posterior") {
    SUBCASE("bivariate with correlation") {
        const double s1 = 2.0, s2 = 0.5, rho = 0.6, m1 = 1.0, m2 = -1.0, z = 0.4;
        JointGaussian j{{m1, m2}, {{s1 * s1, rho * s1 * s2}, {rho * s1 * s2, s2 * s2}}, 1};
        auto p = multivariate_posterior(j, {z});
        CHECK(p.mean[0] == doctest::Approx(m1 + rho * (s1 / s2) * (z - m2)).epsilon(1e-14));
        CHECK(p.cov[0][0] == doctest::Approx(s1 * s1 * (1 - rho * rho)).epsilon(1e-14));
    }
    SUBCASE("zero correlation returns the prior marginal") {
        JointGaussian j{{1.0, 2.0}, {{3.0, 0.0}, {0.0, 1.0}}, 1};
        auto p = multivariate_posterior(j, {7.0});
        CHECK(p.mean[0] == 1.0);
        CHECK(p.cov[0][0] == 3.0);
    }
    SUBCASE("specializes to the scalar formula") {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> u(0.1, 3.0), m(-2.0, 2.0);
        for (int k = 0; k < 10; ++k) {
            double mu = m(rng), vt = u(rng), ve = u(rng), x = m(rng);
            JointGaussian j{{mu, mu}, {{vt, vt}, {vt, vt + ve}}, 1};
            auto a = multivariate_posterior(j, {x});
            auto b = scalar_posterior({mu, vt, ve}, x);
            CHECK(a.mean[0] == doctest::Approx(b.mean).epsilon(1e-12));
            CHECK(a.cov[0][0] == doctest::Approx(b.variance).epsilon(1e-12));
        }
    }
    SUBCASE("covariance does not depend on the observation") {
        JointGaussian j{{0, 0, 0}, {{2.0, 0.5, 0.3}, {0.5, 1.0, 0.2}, {0.3, 0.2, 1.5}}, 1};
        auto a = multivariate_posterior(j, {0.0, 0.0});
        auto b = multivariate_posterior(j, {5.0, -3.0});
        CHECK(a.cov == b.cov);
    }
    SUBCASE("singular observed block") {
        JointGaussian j{{0, 0, 0}, {{1.0, 0.5, 0.5}, {0.5, 1.0, 1.0}, {0.5, 1.0, 1.0}}, 1};
        CHECK_THROWS_AS(multivariate_posterior(j, {0.0, 0.0}), NumericalError);
    }
}

TEST_CASE("law of total variance by simulation") {
    const double vt = 2.0, ve = 1.0;
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> th(0.0, std::sqrt(vt)), e(0.0, std::sqrt(ve));
    const int n = 1'000'000;
    double s = 0, ss = 0;
    for (int k = 0; k < n; ++k) {
        double m = scalar_posterior({0.0, vt, ve}, th(rng) + e(rng)).mean;
        s += m;
        ss += m * m;
    }
    double var_mean = ss / n - (s / n) * (s / n);
    CHECK(std::abs(var_mean - (vt - scalar_posterior({0.0, vt, ve}, 0.0).variance)) < 1e-2);
}

TEST_CASE("career concerns") {
    CHECK(career_concerns_effort(1.0, 1.0) == 0.5);
    CHECK(career_concerns_effort(2.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(career_concerns_effort(1.0, 1e-12) == doctest::Approx(1.0));
    CHECK(career_concerns_effort(2.0, 1.0) > career_concerns_effort(1.0, 1.0));
    CHECK(career_concerns_effort(1.0, 2.0) < career_concerns_effort(1.0, 1.0));
}

TEST_CASE("coordination equilibrium") {
    auto eq = coordination_equilibrium(3.0, 1.0, 1.0, 0.5);
    CHECK(eq.c == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(eq.kappa == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(eq.fixed_point_residual < 1e-12);

    // Best reply to a_j = c x_j + kappa: a_i = (1-b) E[theta|x] + b E[a_j|x].
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.2, 3.0), b(0.05, 0.95), m(-2.0, 2.0);
    for (int k = 0; k < 50; ++k) {
        double mu = m(rng), vt = u(rng), ve = u(rng), beta = b(rng);
        auto e = coordination_equilibrium(mu, vt, ve, beta);
        double w = vt / (vt + ve);
        double slope = (1 - beta) + beta * e.c;
        CHECK(std::abs(slope * w - e.c) < 1e-12);
        CHECK(std::abs(slope * (1 - w) * mu + beta * e.kappa - e.kappa) < 1e-12);
    }
    CHECK(coordination_equilibrium(0.0, 1.0, 1.0, 1e-9).c == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(coordination_equilibrium(0.0, 0.5, 1.0, 0.5).c < coordination_equilibrium(0.0, 1.0, 1.0, 0.5).c);
    CHECK_THROWS_AS(coordination_equilibrium(0.0, 1.0, 1.0, 1.0), ValidationError);
}

TEST_CASE("data sharing") {
    auto r0 = data_sharing_analysis(0.0, 1.0);
    CHECK(r0.both_share_total == doctest::Approx(1.0));
    CHECK_FALSE(r0.sharing_cheaper_for_both);

    auto r9 = data_sharing_analysis(0.9, 1.0);
    CHECK(r9.both_share_total < 0.5);
    CHECK(r9.sharing_cheaper_for_both);

    for (double rho : {0.0, 0.3, -0.5, 0.9}) {
        auto r = data_sharing_analysis(rho, 2.0);
        double r2 = rho * rho;
        CHECK(r.variance[0][0][0] == 1.0);
        CHECK(r.variance[1][0][0] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(r.variance[1][0][1] == doctest::Approx(1 - r2 / 2).epsilon(1e-14));
        CHECK(r.variance[0][1][0] == doctest::Approx(1 - r2 / 2).epsilon(1e-14));
        CHECK(r.variance[1][1][0] == doctest::Approx((2 - r2) / (4 - r2)).epsilon(1e-14));
        CHECK(r.variance[1][1][1] == doctest::Approx((2 - r2) / (4 - r2)).epsilon(1e-14));
    }

    const double boundary = (7.0 - std::sqrt(17.0)) / 4.0;
    auto rb = data_sharing_analysis(std::sqrt(boundary), 1.0);
    CHECK(std::abs(rb.both_share_total - rb.one_share_total) < 1e-12);
    CHECK_FALSE(data_sharing_analysis(std::sqrt(boundary) - 1e-6, 1.0).sharing_cheaper_for_both);
    CHECK(data_sharing_analysis(std::sqrt(boundary) + 1e-6, 1.0).sharing_cheaper_for_both);
    CHECK_THROWS_AS(data_sharing_analysis(1.0, 1.0), ValidationError);
}
