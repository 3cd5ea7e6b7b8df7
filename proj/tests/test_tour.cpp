#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include "ctsp/tour.hpp"

using namespace ctsp;

TEST_CASE("tour_cost: unit-equilateral triangle") {
    const Instance inst =
        test::explicit_instance(3, {0, 1, 1, 1, 0, 1, 1, 1, 0}, {{1, 2, 3}});
    CHECK(tour_cost(inst, Tour{{1, 2, 3}, 0}) == 3);
    CHECK(tour_cost(inst, Tour{{2, 1, 3}, 0}) == 3);
    CHECK_THROWS_AS(tour_cost(inst, Tour{{1, 2, 2}, 0}), NotAPermutation);
    CHECK_THROWS_AS(tour_cost(inst, Tour{{1, 2}, 0}), NotAPermutation);
}

TEST_CASE("tour_cost: reversal invariance on random tours") {
    const Instance inst = test::small_random_instance(17, 4, 21);
    const CostEvaluator dist = CostEvaluator::plain(inst);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        Tour t = test::random_tour(dist, rng);
        std::vector<int> rev(t.order.rbegin(), t.order.rend());
        CHECK(t.cost == tour_cost(dist, rev));
        CHECK(t.cost == tour_cost(inst, t));
    }
}

TEST_CASE("is_cluster_contiguous: block structure") {
    const Instance inst = test::euc_instance(
        {{0, 0}, {1, 0}, {10, 0}, {11, 0}}, {{1, 2}, {3, 4}});
    CHECK(is_cluster_contiguous(inst, Tour{{1, 2, 3, 4}, 0}));
    CHECK(is_cluster_contiguous(inst, Tour{{2, 1, 4, 3}, 0}));
    CHECK(inter_cluster_edge_count(inst, Tour{{1, 2, 3, 4}, 0}) == 2);

    const Instance interleaved = test::euc_instance(
        {{0, 0}, {1, 0}, {10, 0}, {11, 0}}, {{1, 3}, {2, 4}});
    CHECK_FALSE(is_cluster_contiguous(interleaved, Tour{{1, 2, 3, 4}, 0}));
    CHECK(inter_cluster_edge_count(interleaved, Tour{{1, 2, 3, 4}, 0}) == 4);

    const Instance single = test::small_random_instance(6, 1, 5);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const Tour t{test::random_permutation(6, rng), 0};
        CHECK(is_cluster_contiguous(single, t));
    }
}

TEST_CASE("inter_cluster_edge_count: every feasible tour crosses m times") {
    // 6 vertices in 5 clusters; enumerate all tours
    const Instance inst = test::euc_instance(
        {{0, 0}, {1, 0}, {5, 0}, {9, 0}, {13, 4}, {20, 0}},
        {{1, 2}, {3}, {4}, {5}, {6}});
    std::vector<int> rest{2, 3, 4, 5, 6};
    std::vector<int> order(6);
    order[0] = 1;
    int feasible = 0;
    do {
        std::copy(rest.begin(), rest.end(), order.begin() + 1);
        const Tour t{order, 0};
        const int crossings = inter_cluster_edge_count(inst, t);
        const bool contiguous = is_cluster_contiguous(inst, t);
        CHECK(contiguous == test::oracle_contiguous(inst, order));
        if (contiguous) {
            CHECK(crossings == inst.m);
            ++feasible;
        } else {
            CHECK(crossings > inst.m);
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    CHECK(feasible > 0);
}

TEST_CASE("is_cluster_contiguous agrees with the block-scan oracle exhaustively") {
    const Instance inst = test::small_random_instance(8, 3, 31);
    std::vector<int> rest{2, 3, 4, 5, 6, 7, 8};
    std::vector<int> order(8);
    order[0] = 1;
    do {
        std::copy(rest.begin(), rest.end(), order.begin() + 1);
        CHECK(is_cluster_contiguous(inst, Tour{order, 0}) ==
              test::oracle_contiguous(inst, order));
    } while (std::next_permutation(rest.begin(), rest.end()));
}

TEST_CASE("canonicalize: rotation, reflection, idempotence") {
    CHECK(canonicalize(Tour{{3, 1, 2}, 0}).order == std::vector<int>{1, 2, 3});
    CHECK(canonicalize(Tour{{1, 3, 2}, 0}).order == std::vector<int>{1, 2, 3});

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 3 + static_cast<int>(uniform_below(rng, 10));
        const Tour t{test::random_permutation(n, rng), 0};
        const Tour once = canonicalize(t);
        CHECK(canonicalize(once).order == once.order);
        CHECK(once.order[0] == 1);
    }
}

TEST_CASE("canonicalize: equal cycles share one canonical form") {
    std::mt19937_64 rng(23);
    const int n = 9;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> order = test::random_permutation(n, rng);
        std::vector<int> rotated(order);
        std::rotate(rotated.begin(),
                    rotated.begin() + 1 + uniform_below(rng, n - 1), rotated.end());
        std::vector<int> reflected(rotated.rbegin(), rotated.rend());
        const auto canon = canonicalize(Tour{order, 0}).order;
        CHECK(canonicalize(Tour{rotated, 0}).order == canon);
        CHECK(canonicalize(Tour{reflected, 0}).order == canon);
    }
}

TEST_CASE("tour text round-trip") {
    const Tour t{{4, 1, 3, 2}, 77};
    const std::string text = write_tour(t);
    CHECK(text == "COST 77\n4 1 3 2\n");
    std::istringstream in(text);
    const Tour back = read_tour(in);
    CHECK(back.order == t.order);
    CHECK(back.cost == t.cost);
}
