#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>

#include "ctsp/cost.hpp"
#include "ctsp/instance.hpp"
#include "ctsp/tour.hpp"

namespace ctsp {

/// Plain-TSP view of a clustered instance: every inter-cluster edge carries
/// the extra penalty M, so an optimal TSP tour crosses between clusters
/// exactly m times and is therefore cluster-feasible.
struct TspInstance {
    std::shared_ptr<const Instance> source;
    std::int64_t big_m = 0;
    CostEvaluator cost; // c' = c + M across clusters

    int n() const { return source->n; }
    int m() const { return source->m; }
};

/// M = n * c_max + 1. One extra cluster crossing then always outweighs any
/// possible intra-cluster total. Throws Overflow when a dominance-safe M is
/// not representable.
std::int64_t big_m_value(const Instance& inst);

TspInstance to_tsp(const Instance& inst);
TspInstance to_tsp(std::shared_ptr<const Instance> inst);

/// tsp_cost - m*M, the CTSP objective of the corresponding feasible tour.
/// Throws NegativeResult when tsp_cost < m*M, which signals the tour was
/// not cluster-feasible and the caller must re-check contiguity.
std::int64_t recover_cost(std::int64_t tsp_cost, int m, std::int64_t big_m);

struct LiftResult {
    Tour tour;     // identical permutation, cost re-evaluated under c
    bool feasible; // cluster-contiguity verdict
};

LiftResult lift_tour(const Tour& tsp_tour, const Instance& inst);

/// Writes the transformed instance as a plain TSPLIB file (EXPLICIT /
/// FULL_MATRIX) so external TSP solvers can consume it; the header comment
/// records M and m for later recovery. Throws TooLarge for n > 3000.
void write_transformed(const TspInstance& tsp, std::ostream& out);

} // namespace ctsp
