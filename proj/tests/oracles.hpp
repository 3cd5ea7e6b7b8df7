#pragma once

// Independent reference implementations used only by tests. They stay
// deliberately naive (direct scans, full permutation enumeration) so they
// share no code path with the library routines they check.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "ctsp/cost.hpp"
#include "ctsp/instance.hpp"

namespace ctsp::test {

/// Direct block-scan contiguity check: each cluster's positions must form a
/// single cyclic run.
inline bool oracle_contiguous(const Instance& inst, const std::vector<int>& order) {
    const int n = inst.n;
    for (int k = 1; k <= inst.m; ++k) {
        std::vector<bool> member(n, false);
        int count = 0;
        for (int p = 0; p < n; ++p)
            if (inst.cluster_of[order[p]] == k) {
                member[p] = true;
                ++count;
            }
        if (count == n) continue;
        int exits = 0;
        for (int p = 0; p < n; ++p)
            if (member[p] && !member[(p + 1) % n]) ++exits;
        if (exits != 1) return false;
    }
    return true;
}

inline std::int64_t oracle_order_cost(const CostEvaluator& dist,
                                      const std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    std::int64_t total = 0;
    for (int i = 0; i < n; ++i) total += dist(order[i], order[(i + 1) % n]);
    return total;
}

/// Minimum tour cost by full permutation enumeration (first vertex fixed).
/// Practical for n <= 9.
inline std::int64_t oracle_tsp_optimum(const CostEvaluator& dist) {
    const int n = dist.n();
    std::vector<int> rest;
    for (int v = 2; v <= n; ++v) rest.push_back(v);
    std::vector<int> order(n);
    order[0] = 1;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    do {
        std::copy(rest.begin(), rest.end(), order.begin() + 1);
        best = std::min(best, oracle_order_cost(dist, order));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

/// Minimum cluster-contiguous tour cost by filtering the full permutation
/// space. Practical for n <= 9.
inline std::int64_t oracle_ctsp_optimum(const Instance& inst) {
    const CostEvaluator dist = CostEvaluator::plain(inst);
    const int n = inst.n;
    std::vector<int> rest;
    for (int v = 2; v <= n; ++v) rest.push_back(v);
    std::vector<int> order(n);
    order[0] = 1;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    do {
        std::copy(rest.begin(), rest.end(), order.begin() + 1);
        if (oracle_contiguous(inst, order))
            best = std::min(best, oracle_order_cost(dist, order));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

} // namespace ctsp::test
