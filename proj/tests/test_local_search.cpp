#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include "ctsp/local_search.hpp"
#include "ctsp/transform.hpp"

using namespace ctsp;

namespace {

Instance collinear(int n, double step = 1.0) {
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back({i * step, 0.0});
    return ctsp::test::euc_instance(std::move(pts), {[&] {
                                        std::vector<int> all;
                                        for (int v = 1; v <= n; ++v) all.push_back(v);
                                        return all;
                                    }()});
}

} // namespace

TEST_CASE("candidate lists: geometry and full-sort degenerate case") {
    const Instance line = collinear(4);
    const CostEvaluator dist = CostEvaluator::plain(line);

    const CandidateLists k2 = build_candidate_lists(dist, 2);
    CHECK(k2.lists[1] == std::vector<int>{2, 3});
    CHECK(k2.lists[2] == std::vector<int>{1, 3}); // tie at distance 1 broken by id
    CHECK(k2.lists[4] == std::vector<int>{3, 2});

    const CandidateLists full = build_candidate_lists(dist, 3);
    CHECK(full.lists[1] == std::vector<int>{2, 3, 4});
    for (int v = 1; v <= 4; ++v) {
        CHECK(full.lists[v].size() == 3);
        CHECK(std::find(full.lists[v].begin(), full.lists[v].end(), v) ==
              full.lists[v].end());
    }

    const CandidateLists clamped = build_candidate_lists(dist, 10);
    CHECK(clamped.k == 3);
}

TEST_CASE("candidate lists: transformed costs rank same-cluster vertices first") {
    const Instance inst = test::small_random_instance(12, 2, 404);
    const TspInstance tsp = to_tsp(inst);
    const CandidateLists cl = build_candidate_lists(tsp.cost, 11);
    for (int v = 1; v <= inst.n; ++v) {
        const std::size_t own =
            inst.clusters[inst.cluster_of[v] - 1].size() - 1;
        for (std::size_t i = 0; i < cl.lists[v].size(); ++i) {
            const bool same = inst.cluster_of[cl.lists[v][i]] == inst.cluster_of[v];
            CHECK(same == (i < own));
        }
    }
}

TEST_CASE("nearest neighbor: line geometry and triangle perimeter") {
    const Instance tri =
        test::explicit_instance(3, {0, 1, 1, 1, 0, 1, 1, 1, 0}, {{1, 2, 3}});
    std::mt19937_64 rng(1);
    const Tour t = nearest_neighbor_tour(CostEvaluator::plain(tri), 2, rng);
    CHECK(t.cost == 3);
    CHECK(is_permutation_1n(t.order, 3));

    const Instance line = collinear(4, 10.0);
    const Tour walk = nearest_neighbor_tour(CostEvaluator::plain(line), 1, rng);
    CHECK(walk.order == std::vector<int>{1, 2, 3, 4});
    CHECK(walk.cost == 60);
}

TEST_CASE("nearest neighbor: transformed costs keep clusters together") {
    const Instance inst = test::small_random_instance(30, 5, 2024);
    const TspInstance tsp = to_tsp(inst);
    int contiguous = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed);
        const int start = 1 + static_cast<int>(uniform_below(rng, 30));
        const Tour t = nearest_neighbor_tour(tsp.cost, start, rng);
        if (is_cluster_contiguous(inst, t)) ++contiguous;
    }
    CHECK(contiguous >= 95);
}

TEST_CASE("two_opt: uncrosses a square and respects fixpoints") {
    const Instance square = test::euc_instance(
        {{0, 0}, {10, 0}, {10, 10}, {0, 10}}, {{1, 2, 3, 4}});
    const CostEvaluator dist = CostEvaluator::plain(square);
    const CandidateLists cl = build_candidate_lists(dist, 3);

    const Tour crossed = make_tour(dist, {1, 3, 2, 4});
    CHECK(crossed.cost == 48);
    const Tour fixed = two_opt(dist, crossed, cl);
    CHECK(fixed.cost == 40);
    CHECK(canonicalize(fixed).order == std::vector<int>{1, 2, 3, 4});
    CHECK(fixed.cost == tour_cost(dist, fixed.order));

    const Tour optimal = make_tour(dist, {1, 2, 3, 4});
    const Tour unchanged = two_opt(dist, optimal, cl);
    CHECK(unchanged.order == optimal.order);
    CHECK(unchanged.cost == optimal.cost);
}

TEST_CASE("two_opt: near-optimal on small random instances") {
    std::vector<double> gaps;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Instance inst = test::small_random_instance(9, 1, 3000 + seed);
        const CostEvaluator dist = CostEvaluator::plain(inst);
        const CandidateLists cl = build_candidate_lists(dist, 5);
        std::mt19937_64 rng(seed);
        const Tour start = test::random_tour(dist, rng);
        const Tour improved = two_opt(dist, start, cl);
        CHECK(improved.cost <= start.cost);
        CHECK(is_permutation_1n(improved.order, 9));
        CHECK(improved.cost == tour_cost(dist, improved.order));

        const std::int64_t opt = test::oracle_tsp_optimum(dist);
        CHECK(improved.cost >= opt);
        gaps.push_back(opt == 0 ? 0.0
                                : 100.0 * static_cast<double>(improved.cost - opt) /
                                      static_cast<double>(opt));
    }
    std::sort(gaps.begin(), gaps.end());
    CHECK(gaps[gaps.size() / 2] <= 15.0); // regression guard
}

TEST_CASE("or_opt: repairs a misplaced vertex on a line") {
    const Instance line = collinear(5, 10.0);
    const CostEvaluator dist = CostEvaluator::plain(line);
    const CandidateLists cl = build_candidate_lists(dist, 4);

    const Tour misplaced = make_tour(dist, {1, 3, 2, 4, 5});
    CHECK(misplaced.cost == 100);
    const Tour repaired = or_opt(dist, misplaced, cl);
    // several distinct cycles reach the line optimum of 80; or_opt must land
    // on one of them
    CHECK(repaired.cost == 80);
    CHECK(repaired.cost == test::oracle_tsp_optimum(dist));
    CHECK(is_permutation_1n(repaired.order, 5));

    const Tour optimal = make_tour(dist, {1, 2, 3, 4, 5});
    const Tour unchanged = or_opt(dist, optimal, cl);
    CHECK(unchanged.order == optimal.order);
}

TEST_CASE("or_opt after two_opt never hurts") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Instance inst = test::small_random_instance(30, 3, 500 + seed);
        const CostEvaluator dist = CostEvaluator::plain(inst);
        const CandidateLists cl = build_candidate_lists(dist, 8);
        std::mt19937_64 rng(seed * 31 + 1);
        const Tour start = test::random_tour(dist, rng);
        const Tour with_two = two_opt(dist, start, cl);
        const Tour with_both = or_opt(dist, with_two, cl);
        CHECK(with_both.cost <= with_two.cost);
        CHECK(with_both.cost == tour_cost(dist, with_both.order));
        CHECK(is_permutation_1n(with_both.order, 30));
    }
}

TEST_CASE("local search: deterministic for fixed inputs") {
    const Instance inst = test::small_random_instance(40, 4, 909);
    const TspInstance tsp = to_tsp(inst);
    const CandidateLists cl = build_candidate_lists(tsp.cost, 10);
    auto run = [&] {
        std::mt19937_64 rng(42);
        Tour t = nearest_neighbor_tour(tsp.cost, 7, rng, &cl);
        t = two_opt(tsp.cost, t, cl);
        return or_opt(tsp.cost, t, cl);
    };
    const Tour a = run();
    const Tour b = run();
    CHECK(a.order == b.order);
    CHECK(a.cost == b.cost);
}
