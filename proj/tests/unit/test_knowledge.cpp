#include "infonomics/error.hpp"
#include "infonomics/knowledge.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace infonomics;
using fixtures::event_of;

TEST_CASE("knowledge operators on the six-state model") {
    auto m = fixtures::six_state_model<Rational>();
    auto a = event_of(m, {3, 4, 5, 6});

    CHECK(knowledge_operator(m, {0}, a) == event_of(m, {4, 5, 6}));
    CHECK(knowledge_operator(m, {1}, a) == event_of(m, {3, 4, 5, 6}));
    CHECK(mutual_knowledge(m, a) == event_of(m, {4, 5, 6}));
    CHECK(knowledge_operator(m, {0}, m.full_event()) == m.full_event());

    // K(A) = {4,5,6}, then {5,6}, then {6}, which is a meet block.
    CHECK(common_knowledge_iterated(m, a) == event_of(m, {6}));
    CHECK(common_knowledge_iterated(m, m.full_event()) == m.full_event());
}

TEST_CASE("meet and the three common-knowledge constructions") {
    auto m = fixtures::six_state_model<Rational>();
    auto mt = meet(m);
    REQUIRE(mt.size() == 2);
    CHECK(mt[0] == Block{0, 1, 2, 3, 4});
    CHECK(mt[1] == Block{5});

    auto a = event_of(m, {1, 2, 3, 4, 5});
    CHECK(common_knowledge_via_meet(m, a, 0));
    CHECK(common_knowledge_via_evident(m, a, 0));
    CHECK_FALSE(common_knowledge_via_meet(m, event_of(m, {3, 4, 5, 6}), 3));
    CHECK(is_evident(m, a));
    CHECK_FALSE(is_evident(m, event_of(m, {4, 5, 6})));

    SUBCASE("identical partitions") {
        auto same = fixtures::uniform_model<double>(4, {{{1, 2}, {3, 4}}, {{1, 2}, {3, 4}}});
        CHECK(meet(same) == fixtures::one_based({{1, 2}, {3, 4}}));
        auto blk = event_of(same, {1, 2});
        CHECK(common_knowledge_iterated(same, blk) == blk);
    }
    SUBCASE("a trivial partition forces the trivial meet") {
        auto t = fixtures::uniform_model<double>(4, {{{1, 2, 3, 4}}, {{1}, {2}, {3}, {4}}});
        CHECK(meet(t).size() == 1);
    }
}

TEST_CASE("posteriors and p-belief") {
    auto m = fixtures::six_state_model<Rational>();
    CHECK(event_posterior(m, 1, event_of(m, {2, 3}), 0) == Rational(1, 2));
    CHECK(event_posterior(m, 0, m.full_event(), 3) == Rational(1));

    // Agent 2 assigns 1/2 to {2,3} on {1,2} and {3,4}, zero elsewhere.
    CHECK(p_belief(m, 1, event_of(m, {2, 3}), Rational(1, 2)) == event_of(m, {1, 2, 3, 4}));
    CHECK(p_belief(m, 0, event_of(m, {2}), Rational(0)) == m.full_event());

    auto aumann = fixtures::uniform_model<Rational>(4, {{{1, 2}, {3, 4}}, {{1, 2, 3}, {4}}});
    CHECK(event_posterior(aumann, 0, event_of(aumann, {1, 4}), 1) == Rational(1, 2));
    CHECK(event_posterior(aumann, 1, event_of(aumann, {1, 4}), 1) == Rational(1, 3));
}

TEST_CASE("1-belief differs from knowledge under a null state") {
    PartitionModelOptions opt;
    opt.require_positive_blocks = false;
    PartitionModel<Rational> m(fixtures::numbered_states(3), {Rational(0), Rational(1, 2), Rational(1, 2)},
                               {fixtures::one_based({{1, 2}, {3}}), fixtures::one_based({{1}, {2}, {3}})}, opt);
    auto two = event_of(m, {2});
    CHECK(knowledge_operator(m, {0}, two).none());
    CHECK(p_belief(m, 0, two, Rational(1)) == event_of(m, {1, 2}));
    CHECK_THROWS_AS(event_posterior(m, 1, two, 0), ZeroProbabilityError);
}

TEST_CASE("validation of partition models") {
    CHECK_THROWS_AS(fixtures::uniform_model<double>(3, {{{1, 2}, {2, 3}}}), ValidationError);
    CHECK_THROWS_AS(fixtures::uniform_model<double>(3, {{{1, 2}}}), ValidationError);
    CHECK_THROWS_AS(PartitionModel<double>(fixtures::numbered_states(2), {0.0, 1.0}, {fixtures::one_based({{1}, {2}})}),
                    ValidationError);
    CHECK_THROWS_AS(PartitionModel<double>(fixtures::numbered_states(2), {0.3, 0.3}, {fixtures::one_based({{1, 2}})}),
                    ValidationError);
}

TEST_CASE("agreement check") {
    auto cross = fixtures::uniform_model<Rational>(4, {{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}});
    auto r = agreement_check(cross, event_of(cross, {1, 4}), 0);
    CHECK(r.posteriors == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(r.common_knowledge);
    CHECK_FALSE(r.violation);

    auto aumann = fixtures::uniform_model<Rational>(4, {{{1, 2}, {3, 4}}, {{1, 2, 3}, {4}}});
    auto s = agreement_check(aumann, event_of(aumann, {1, 4}), 1);
    CHECK(s.posteriors == std::vector<Rational>{Rational(1, 2), Rational(1, 3)});
    CHECK_FALSE(s.common_knowledge);
    CHECK_FALSE(s.violation);
}

TEST_CASE("Geanakoplos-Polemarchakis dialogue") {
    auto m = fixtures::bob_carly_model<Rational>();
    auto t = gp_dialogue(m, event_of(m, {3, 4}), 0);
    REQUIRE(t.announcements.size() == 3);
    CHECK(t.announcements[0] == std::vector<Rational>{Rational(1, 3), Rational(1, 2)});
    CHECK(t.announcements[1] == std::vector<Rational>{Rational(1, 3), Rational(1, 2)});
    CHECK(t.announcements[2] == std::vector<Rational>{Rational(1, 3), Rational(1, 3)});
    CHECK(t.agreed);
    CHECK(t.rounds_to_stable < 6);

    auto cross = fixtures::uniform_model<Rational>(4, {{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}});
    auto c = gp_dialogue(cross, event_of(cross, {1, 4}), 0);
    REQUIRE(c.announcements.size() == 1);
    CHECK(c.announcements[0] == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(c.agreed);
}

TEST_CASE("knowledge properties on random models") {
    std::mt19937_64 rng(20260101);
    std::uniform_int_distribution<std::size_t> nd(2, 8);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = nd(rng);
        auto prior = fixtures::random_simplex(rng, n, 0.05);
        std::vector<Partition> parts{fixtures::random_partition(rng, n, 4), fixtures::random_partition(rng, n, 4)};
        PartitionModel<double> m(fixtures::numbered_states(n), prior, parts);
        PartitionModel<double> swapped(fixtures::numbered_states(n), prior, {parts[1], parts[0]});
        CHECK(meet(m) == meet(swapped));

        EventSet a(n);
        std::bernoulli_distribution coin(0.6);
        for (std::size_t s = 0; s < n; ++s) a[s] = coin(rng);

        for (std::size_t i = 0; i < 2; ++i) {
            auto k = knowledge_operator(m, {i}, a);
            CHECK(k.is_subset_of(a));
            CHECK(~knowledge_operator(m, {i}, ~k) == k);
        }
        auto k12 = knowledge_operator(m, {0}, knowledge_operator(m, {1}, a));
        CHECK(k12.is_subset_of(mutual_knowledge(m, a)));

        // Three definitions of common knowledge agree.
        auto ck = common_knowledge_iterated(m, a);
        EventSet by_meet(n), by_evident(n);
        for (std::size_t s = 0; s < n; ++s) {
            by_meet[s] = common_knowledge_via_meet(m, a, s);
            by_evident[s] = common_knowledge_via_evident(m, a, s);
        }
        CHECK(ck == by_meet);
        CHECK(ck == by_evident);

        // Evident events are unions of meet blocks.
        bool union_of_blocks = true;
        for (const auto& b : meet(m)) {
            auto be = m.event(b);
            if ((be & a).any() && !be.is_subset_of(a)) union_of_blocks = false;
        }
        CHECK(is_evident(m, a) == union_of_blocks);

        for (std::size_t s = 0; s < n; ++s) CHECK_FALSE(agreement_check(m, a, s, 1e-12).violation);

        auto t = gp_dialogue(m, a, 0);
        CHECK(t.rounds_to_stable < parts[0].size() + parts[1].size());
        CHECK(t.agreed);

        auto lo = common_p_belief(m, a, 0.6);
        auto hi = common_p_belief(m, a, 0.9);
        CHECK(hi.is_subset_of(lo));
        CHECK(common_p_belief(m, a, 1.0) == ck);
    }
}
