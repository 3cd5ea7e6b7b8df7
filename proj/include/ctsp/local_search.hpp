#pragma once

#include <random>
#include <vector>

#include "ctsp/cost.hpp"
#include "ctsp/tour.hpp"

namespace ctsp {

/// Per-vertex nearest-neighbor lists under the operative distances (c or
/// c'), ascending, ties broken by vertex id. Immutable and shared across
/// threads.
struct CandidateLists {
    int k = 0;
    std::vector<std::vector<int>> lists; // lists[v] for v in 1..n; slot 0 unused
};

CandidateLists build_candidate_lists(const CostEvaluator& dist, int k);

/// Greedy tour from `start`, always visiting the nearest unvisited vertex;
/// ties broken uniformly at random. When candidate lists are supplied they
/// accelerate the scan (ties are then broken within the list only).
Tour nearest_neighbor_tour(const CostEvaluator& dist, int start, std::mt19937_64& rng,
                           const CandidateLists* cl = nullptr);

/// 2-opt descent restricted to candidate-list moves, with don't-look bits.
/// Cost never increases; segment reversal always takes the shorter arc.
Tour two_opt(const CostEvaluator& dist, const Tour& t, const CandidateLists& cl);

/// Or-opt descent: relocates segments of length 1-3 (either orientation)
/// next to candidate neighbors. Cost never increases.
Tour or_opt(const CostEvaluator& dist, const Tour& t, const CandidateLists& cl);

} // namespace ctsp
