#include "infonomics/common_learning.hpp"
#include "infonomics/error.hpp"
#include "infonomics/knowledge.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace infonomics;

namespace {

const Matrix<double> kPhi{{0.75, 0.25}, {0.25, 0.75}};
const Matrix<double> kPsi{{0.7, 0.3}, {0.3, 0.7}};

// Brute force on the space of (theta, ordered history). Each agent's partition
// is by their own sequence of signals.
double partition_common_belief(const TwoAgentSignalModel& m, const std::vector<double>& prior, std::size_t theta,
                               std::size_t horizon, double q) {
    const std::size_t n1 = m.num_x1(), n2 = m.num_x2(), cells = n1 * n2;
    std::size_t histories = 1;
    for (std::size_t t = 0; t < horizon; ++t) histories *= cells;

    std::vector<std::string> names;
    std::vector<double> mass;
    std::vector<std::size_t> state_theta;
    std::map<std::vector<std::size_t>, Block> by1, by2;
    for (std::size_t th = 0; th < m.num_thetas(); ++th)
        for (std::size_t h = 0; h < histories; ++h) {
            double p = prior[th];
            std::vector<std::size_t> seq1, seq2;
            for (std::size_t t = 0, code = h; t < horizon; ++t, code /= cells) {
                std::size_t i = (code % cells) / n2, j = code % n2;
                p *= m.joint[th][i][j];
                seq1.push_back(i);
                seq2.push_back(j);
            }
            if (p == 0.0) continue;
            by1[seq1].push_back(names.size());
            by2[seq2].push_back(names.size());
            names.push_back(std::to_string(th) + ":" + std::to_string(h));
            mass.push_back(p);
            state_theta.push_back(th);
        }
    Partition p1, p2;
    for (auto& [k, b] : by1) p1.push_back(b);
    for (auto& [k, b] : by2) p2.push_back(b);
    PartitionModel<double> pm(names, mass, {p1, p2});
    EventSet a(names.size());
    for (std::size_t s = 0; s < names.size(); ++s) a[s] = state_theta[s] == theta;
    auto c = common_p_belief(pm, a, q);
    double in = 0;
    for (std::size_t s = 0; s < names.size(); ++s)
        if (c[s] && state_theta[s] == theta) in += mass[s];
    return in / prior[theta];
}

}  // namespace

TEST_CASE("model builders") {
    auto ind = independent_model(kPhi, kPsi);
    CHECK(ind.joint[0][0][1] == doctest::Approx(0.75 * 0.3));
    CHECK(ind.marginal2(1) == std::vector<double>{0.3, 0.7});
    auto pub = public_model(kPhi);
    CHECK(pub.joint[1][0][1] == 0.0);

    auto tw = email_twist_model(0.2, 0.8, 0.1, 40);
    for (std::size_t t = 0; t < 2; ++t) {
        double total = 0;
        for (const auto& row : tw.joint[t])
            for (double v : row) total += v;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        auto d = contagion_diagnostics(tw, t);
        CHECK(d.row_sum_error < 1e-12);
        CHECK(d.stationarity_error < 1e-12);
    }
    CHECK(tw.joint[0][0][0] == 0.2);
    CHECK_THROWS_AS(email_twist_model(0.8, 0.2, 0.1, 4), ValidationError);
}

TEST_CASE("public signals: individual and common learning coincide") {
    auto pub = public_model(kPhi);
    for (std::size_t horizon : {3, 8, 20}) {
        auto r = common_learning_sim(pub, {0.5, 0.5}, 0, horizon, 0.9);
        CHECK(r.prob_common == doctest::Approx(r.prob_individual1).epsilon(1e-12));
        CHECK(r.prob_both == doctest::Approx(r.prob_individual2).epsilon(1e-12));
        CHECK(r.stabilized);
    }
}

TEST_CASE("conditionally independent signals are commonly learned") {
    auto ind = independent_model(kPhi, kPsi);
    auto early = common_learning_sim(ind, {0.5, 0.5}, 0, 20, 0.9);
    auto late = common_learning_sim(ind, {0.5, 0.5}, 0, 60, 0.9);
    CHECK(late.prob_common > 0.99);
    CHECK(late.prob_common >= early.prob_common);
    CHECK(late.prob_common <= late.prob_both + 1e-12);
    CHECK(late.prob_both <= std::min(late.prob_individual1, late.prob_individual2) + 1e-12);
}

TEST_CASE("email-style contagion blocks common learning") {
    auto tw = email_twist_model(0.2, 0.8, 0.1, 40);
    for (std::size_t horizon : {3, 4}) {
        auto r = common_learning_sim(tw, {0.5, 0.5}, 1, horizon, 0.95);
        CHECK(r.prob_both > 0.3);
        CHECK(r.prob_common == 0.0);
        CHECK(r.stabilized);
    }
}

TEST_CASE("agrees with the partition-model operator") {
    auto ind = independent_model(kPhi, kPsi);
    auto tw = email_twist_model(0.2, 0.8, 0.3, 4);
    for (std::size_t horizon : {1, 2, 3})
        for (double q : {0.6, 0.8}) {
            for (std::size_t th = 0; th < 2; ++th) {
                auto a = common_learning_sim(ind, {0.4, 0.6}, th, horizon, q);
                CHECK(a.prob_common == doctest::Approx(partition_common_belief(ind, {0.4, 0.6}, th, horizon, q)).epsilon(1e-10));
                auto b = common_learning_sim(tw, {0.5, 0.5}, th, horizon, q);
                CHECK(b.prob_common == doctest::Approx(partition_common_belief(tw, {0.5, 0.5}, th, horizon, q)).epsilon(1e-10));
            }
        }
}

TEST_CASE("simulation matches the exact probabilities") {
    auto ind = independent_model(kPhi, kPsi);
    auto r = common_learning_sim(ind, {0.5, 0.5}, 0, 10, 0.8, 4000, 5);
    CHECK(r.n_paths == 4000);
    CHECK(std::abs(r.sim_individual1 - r.prob_individual1) < 0.03);
    CHECK(std::abs(r.sim_common - r.prob_common) < 0.03);
    CHECK_THROWS_AS(common_learning_sim(ind, {0.5, 0.5}, 0, 0, 0.8), ValidationError);
    CHECK_THROWS_AS(common_learning_sim(ind, {1.0, 0.0}, 1, 3, 0.8), ValidationError);
}
