#pragma once

#include <string>

#include "ctsp/cost.hpp"
#include "ctsp/instance.hpp"
#include "ctsp/tour.hpp"

namespace ctsp {

/// Globally optimal cluster-contiguous tour by enumerating cluster orders
/// times within-cluster orders (one rotation fixed). Ties resolved toward
/// the lexicographically smallest canonical tour. Throws TooLarge when
/// m! * prod((|V_k| - 1)!) exceeds 1e7.
Tour brute_force_ctsp(const Instance& inst);

/// Optimal Hamiltonian cycle under an arbitrary cost view, by Held-Karp
/// dynamic programming. Throws TooLarge for n > 12.
Tour brute_force_tsp(const CostEvaluator& dist);

/// CPLEX-LP text of the MTZ integer program: assignment rows, ordering-
/// variable subtour elimination, one contiguity row per cluster. Self-arcs
/// are emitted and fixed to zero. Throws TooLarge for n > 3000.
std::string export_mtz_model(const Instance& inst);

/// CPLEX-LP text of the multi-commodity-flow program: one unit of flow from
/// city 1 to every other city over selected arcs. Throws TooLarge for
/// n > 200.
std::string export_mcf_model(const Instance& inst);

} // namespace ctsp
