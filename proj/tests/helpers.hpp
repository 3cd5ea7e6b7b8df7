#pragma once

#include <random>
#include <string>
#include <vector>

#include "ctsp/cost.hpp"
#include "ctsp/instance.hpp"
#include "ctsp/rng.hpp"
#include "ctsp/tour.hpp"

namespace ctsp::test {

inline Instance euc_instance(std::vector<Point> points,
                             std::vector<std::vector<int>> clusters,
                             std::string name = "test") {
    Instance inst;
    inst.name = std::move(name);
    inst.n = static_cast<int>(points.size());
    inst.m = static_cast<int>(clusters.size());
    inst.kind = DistanceKind::Euc2dRounded;
    inst.coords.assign(inst.n + 1, Point{});
    for (int v = 1; v <= inst.n; ++v) inst.coords[v] = points[v - 1];
    inst.clusters = std::move(clusters);
    inst.cluster_of.assign(inst.n + 1, 0);
    for (int k = 0; k < inst.m; ++k)
        for (int v : inst.clusters[k]) inst.cluster_of[v] = k + 1;
    validate(inst);
    return inst;
}

inline Instance explicit_instance(int n, std::vector<std::int64_t> full_matrix,
                                  std::vector<std::vector<int>> clusters,
                                  std::string name = "test") {
    Instance inst;
    inst.name = std::move(name);
    inst.n = n;
    inst.m = static_cast<int>(clusters.size());
    inst.kind = DistanceKind::ExplicitMatrix;
    inst.weights.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            inst.weights[static_cast<std::size_t>(i) * (n + 1) + j] =
                full_matrix[static_cast<std::size_t>(i - 1) * n + (j - 1)];
    inst.clusters = std::move(clusters);
    inst.cluster_of.assign(inst.n + 1, 0);
    for (int k = 0; k < inst.m; ++k)
        for (int v : inst.clusters[k]) inst.cluster_of[v] = k + 1;
    validate(inst);
    return inst;
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i + 1;
    fisher_yates_shuffle(order, rng);
    return order;
}

inline Tour random_tour(const CostEvaluator& dist, std::mt19937_64& rng) {
    return make_tour(dist, random_permutation(dist.n(), rng));
}

/// Random clustered instance with n <= ~12 for brute-force comparisons.
inline Instance small_random_instance(int n, int m, std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.n = n;
    cfg.m = m;
    cfg.cluster_spread = 8.0;
    cfg.field_size = 400.0;
    cfg.seed = seed;
    return generate_clustered(cfg);
}

} // namespace ctsp::test
