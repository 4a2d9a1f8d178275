#include "infonomics/error.hpp"
#include "infonomics/orders.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace infonomics;

namespace {

ConditionalFamily binary_q_family(double q) { return ConditionalFamily({0, 1}, {0, 1}, {{q, 1 - q}, {1 - q, q}}); }

// Random family with MLRP: rows from a TP2 kernel exp(a_t * b_x) times positive weights.
ConditionalFamily random_mlrp_family(std::mt19937_64& rng, std::size_t nt, std::size_t nx) {
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<double> a(nt), b(nx), w(nx), thetas, grid;
    double acc = 0;
    for (auto& v : a) v = (acc += u(rng));
    acc = 0;
    for (auto& v : b) v = (acc += u(rng));
    for (auto& v : w) v = u(rng);
    Matrix<double> rows(nt, std::vector<double>(nx));
    for (std::size_t t = 0; t < nt; ++t) {
        double s = 0;
        for (std::size_t x = 0; x < nx; ++x) s += rows[t][x] = w[x] * std::exp(a[t] * b[x]);
        for (auto& v : rows[t]) v /= s;
        thetas.push_back(double(t));
    }
    for (std::size_t x = 0; x < nx; ++x) grid.push_back(double(x));
    return ConditionalFamily(thetas, grid, rows);
}

ConditionalFamily random_family(std::mt19937_64& rng, std::size_t nt, std::size_t nx) {
    std::vector<double> thetas, grid;
    for (std::size_t t = 0; t < nt; ++t) thetas.push_back(double(t));
    for (std::size_t x = 0; x < nx; ++x) grid.push_back(double(x));
    return ConditionalFamily(thetas, grid, fixtures::random_stochastic(rng, nt, nx, 0.02));
}

FiniteDensity binomial2(double p) { return FiniteDensity({0, 1, 2}, {(1 - p) * (1 - p), 2 * p * (1 - p), p * p}); }

}  // namespace

TEST_CASE("likelihood-ratio dominance") {
    FiniteDensity f({0, 1}, {0.25, 0.75}), g({0, 1}, {0.75, 0.25});
    CHECK(lr_dominates(f, g));
    CHECK_FALSE(lr_dominates(g, f));
    CHECK(lr_dominates(f, f));
    CHECK(lr_dominates(binomial2(0.7), binomial2(0.3)));
    CHECK_THROWS_AS(FiniteDensity({0, 0}, {0.5, 0.5}), ValidationError);
}

TEST_CASE("MLRP") {
    CHECK(mlrp_check(binary_q_family(0.75)));
    CHECK(mlrp_check(binary_q_family(0.75), true));
    CHECK_FALSE(mlrp_check(binary_q_family(0.25)));
    CHECK(mlrp_check(ConditionalFamily({0}, {0, 1, 2}, {{0.2, 0.3, 0.5}})));

    auto editor = editor_signal(9, 0.8, 2);
    CHECK_FALSE(mlrp_check(editor));
    auto v = find_mlrp_violation(editor);
    REQUIRE(v.has_value());
    const auto& r = editor.rows;
    CHECK(r[v->theta_hi][v->x_hi] * r[v->theta_lo][v->x_lo] < r[v->theta_hi][v->x_lo] * r[v->theta_lo][v->x_hi]);
}

TEST_CASE("affiliation of 2x2 tables") {
    CHECK(affiliation_check(JointDensity({2, 2}, {0.4, 0.1, 0.1, 0.4})));
    CHECK_FALSE(affiliation_check(JointDensity({2, 2}, {0.1, 0.4, 0.4, 0.1})));
    std::mt19937_64 rng(5);
    // Independent marginals are affiliated in any dimension.
    for (int trial = 0; trial < 20; ++trial) {
        auto a = fixtures::random_simplex(rng, 3), b = fixtures::random_simplex(rng, 2), c = fixtures::random_simplex(rng, 3);
        std::vector<double> m;
        for (double x : a)
            for (double y : b)
                for (double z : c) m.push_back(x * y * z);
        JointDensity j({3, 2, 3}, m);
        CHECK(affiliation_check(j));
        CHECK(affiliation_check_lattice(j));
    }
}

TEST_CASE("FOSD and posterior monotonicity") {
    FiniteDensity f({0, 1}, {0.5, 0.5});
    CHECK(fosd_check(f, f));
    CHECK(fosd_check(FiniteDensity({0, 1}, {0, 1}), FiniteDensity({0, 1}, {1, 0})));
    CHECK_FALSE(fosd_check(FiniteDensity({0, 1}, {1, 0}), FiniteDensity({0, 1}, {0, 1})));

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        auto fam = random_mlrp_family(rng, 4, 5);
        for (int k = 0; k < 5; ++k) CHECK(posterior_fosd_property(fixtures::random_simplex(rng, 4, 0.01), fam));
    }
}

TEST_CASE("FOSD is a partial order on random triples") {
    std::mt19937_64 rng(23);
    std::vector<double> grid{0, 1, 2, 3};
    for (int trial = 0; trial < 500; ++trial) {
        FiniteDensity a(grid, fixtures::random_simplex(rng, 4)), b(grid, fixtures::random_simplex(rng, 4)),
            c(grid, fixtures::random_simplex(rng, 4));
        if (fosd_check(a, b) && fosd_check(b, c)) CHECK(fosd_check(a, c));
        if (fosd_check(a, b, 0) && fosd_check(b, a, 0))
            for (std::size_t k = 0; k < 4; ++k) CHECK(a.mass[k] == doctest::Approx(b.mass[k]));
    }
}

TEST_CASE("more favorable realizations") {
    auto fam = binary_q_family(0.75);
    CHECK(more_favorable_check(fam, 1, 1));
    CHECK(more_favorable_check(fam, 1, 0));
    CHECK_FALSE(more_favorable_check(fam, 0, 1));

    auto editor = editor_signal(9, 0.8, 2);
    bool found = false;
    for (std::size_t x = 0; x < editor.grid.size() && !found; ++x)
        for (std::size_t xp = 0; xp < x && !found; ++xp) found = !more_favorable_check(editor, x, xp);
    CHECK(found);
}

TEST_CASE("more favorable for all ordered pairs is MLRP") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        auto fam = trial % 2 ? random_mlrp_family(rng, 3, 4) : random_family(rng, 3, 4);
        bool all = true;
        for (std::size_t x = 0; x < 4; ++x)
            for (std::size_t xp = 0; xp < x; ++xp) all = all && more_favorable_check(fam, x, xp);
        CHECK(all == mlrp_check(fam));
    }
}

TEST_CASE("log-concavity") {
    std::vector<double> grid, mass;
    for (int k = -30; k <= 30; ++k) {
        double x = k / 10.0;
        grid.push_back(x);
        mass.push_back(std::exp(-x * x / 2));
    }
    double s = 0;
    for (double v : mass) s += v;
    for (auto& v : mass) v /= s;
    CHECK(log_concavity_check(FiniteDensity(grid, mass)));
    CHECK(log_concavity_check(FiniteDensity({0, 1, 2}, {0.1, 0.8, 0.1})));
    CHECK_FALSE(log_concavity_check(FiniteDensity({0, 1, 2}, {0.4, 0.1, 0.5})));
    CHECK(log_concavity_check(FiniteDensity({0, 1, 2, 3}, {0.25, 0.25, 0.25, 0.25})));
    CHECK_THROWS_AS(log_concavity_check(FiniteDensity({0, 1, 3}, {0.2, 0.3, 0.5})), ValidationError);
}

TEST_CASE("log-concave additive noise gives MLRP") {
    std::vector<double> thetas{-1, 0, 0.5, 2}, grid;
    for (int k = -40; k <= 40; ++k) grid.push_back(k / 8.0);
    auto normal = [](double z) { return std::exp(-z * z / 2); };
    auto logistic = [](double z) { return std::exp(-z) / std::pow(1 + std::exp(-z), 2); };
    CHECK(mlrp_check(additive_family(thetas, grid, normal), false, 1e-12));
    CHECK(mlrp_check(additive_family(thetas, grid, logistic), false, 1e-12));
    // A bimodal noise is not log-concave and breaks MLRP.
    auto bimodal = [](double z) { return std::exp(-(z - 2) * (z - 2)) + std::exp(-(z + 2) * (z + 2)); };
    CHECK_FALSE(mlrp_check(additive_family(thetas, grid, bimodal)));
}

TEST_CASE("affiliation of prior-built joints matches MLRP") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        auto fam = trial % 2 ? random_mlrp_family(rng, 3, 4) : random_family(rng, 3, 4);
        auto joint = joint_from_family(fixtures::random_simplex(rng, 3, 0.05), fam);
        CHECK(affiliation_check(joint) == mlrp_check(fam));
        CHECK(affiliation_check_lattice(joint) == mlrp_check(fam));
    }
}

TEST_CASE("threshold reports") {
    SUBCASE("revealing signal: the mean rises with the bar") {
        std::vector<double> q{1, 2, 3, 4};
        ConditionalFamily reveal(q, q, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
        auto rep = threshold_report({0.1, 0.2, 0.3, 0.4}, reveal, {1, 2, 3, 4});
        for (std::size_t k = 1; k < rep.rows.size(); ++k) CHECK(*rep.rows[k].mean_quality > *rep.rows[k - 1].mean_quality);
        CHECK_FALSE(find_threshold_reversal(rep).has_value());
    }
    SUBCASE("uninformative signal has one posterior") {
        ConditionalFamily flat({1, 2}, {0, 1}, {{0.5, 0.5}, {0.5, 0.5}});
        auto rep = threshold_report({0.5, 0.5}, flat, {0, 1, 2});
        CHECK(rep.posterior_means[0] == doctest::Approx(rep.posterior_means[1]));
        CHECK_FALSE(rep.rows[2].mean_quality.has_value());
    }
    SUBCASE("editor signal admits a reversal under a bimodal prior") {
        auto editor = editor_signal(9, 0.8, 2);
        std::optional<ThresholdReversal> found;
        for (std::size_t a = 0; a < 9 && !found; ++a)
            for (std::size_t b = a + 1; b < 9 && !found; ++b) {
                std::vector<double> prior(9, 0.01);
                prior[a] += 0.5;
                prior[b] += 0.41;
                auto rep = threshold_report(prior, editor, editor.grid);
                found = find_threshold_reversal(rep);
            }
        REQUIRE(found.has_value());
        CHECK(found->lower_threshold < found->upper_threshold);
        CHECK(found->lower_mean > found->upper_mean);
    }
}
