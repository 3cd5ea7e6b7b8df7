#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "ctsp/cost.hpp"
#include "ctsp/local_search.hpp"
#include "ctsp/tour.hpp"

namespace ctsp {

/// How AB-cycles are picked when forming an E-set.
struct ESetStrategy {
    enum class Kind { Single, KMultiple };
    Kind kind = Kind::Single;
    int k = 2; // used by KMultiple

    static ESetStrategy single() { return {Kind::Single, 0}; }
    static ESetStrategy k_multiple(int k) { return {Kind::KMultiple, k}; }
};

struct GaConfig {
    int population_size = 300;    // p
    int offspring_per_pair = 30;  // r
    ESetStrategy strategy = ESetStrategy::single();
    double termination_epsilon = 0.001; // stop when avg - best drops below
    int max_generations = 3000;
    std::uint64_t seed = 0;
    int candidate_k = 10;
    double time_limit_seconds = 0.0; // 0 = unlimited
    int threads = 0;                 // population init parallelism; 0 = hardware
};

void validate(const GaConfig& cfg); // throws InvalidConfig

/// Two-parent union multigraph: every vertex carries its two parent-A edges
/// and two parent-B edges (degree 4 counting multiplicity). An edge present
/// in both parents appears once under each tag and is flagged common.
struct UnionGraph {
    int n = 0;
    std::vector<std::array<int, 2>> a_adj, b_adj;
    std::vector<std::array<bool, 2>> a_common, b_common;
};

UnionGraph build_union_graph(const Tour& sa, const Tour& sb); // VertexSetMismatch

/// Closed walk alternating parent-A and parent-B edges. Edge i runs
/// verts[i] -> verts[(i+1) % size] and carries tag A when i is even.
struct ABCycle {
    std::vector<int> verts;

    int edge_count() const { return static_cast<int>(verts.size()); }
};

/// Random alternating-walk decomposition: every non-common edge of the
/// union graph lands in exactly one returned cycle (common edges would only
/// form no-op 2-cycles and are excluded).
std::vector<ABCycle> extract_ab_cycles(const UnionGraph& g, std::mt19937_64& rng);

struct ESet {
    std::vector<ABCycle> cycles;
};

/// Single: one uniformly random cycle. KMultiple(k): a uniformly random
/// subset of size min(k, |cycles|). Throws EmptyCycles.
ESet select_eset(const std::vector<ABCycle>& cycles, const ESetStrategy& strategy,
                 std::mt19937_64& rng);

/// Degree-2 edge set produced by applying an E-set to parent A, decomposed
/// into its disjoint subtours.
struct SubtourSet {
    int n = 0;
    std::vector<std::array<int, 2>> adj; // adjacency, 1-based
    std::vector<int> subtour_of;         // labels 1..count per vertex
    int count = 0;
};

/// Removes the E-set's A-edges from parent A and adds its B-edges; the
/// result has every vertex at degree exactly 2. Throws InconsistentESet.
SubtourSet apply_eset(const Tour& sa, const ESet& eset);

/// Reconnects the subtours into one tour: each step joins the currently
/// smallest subtour to another via the 2-edge exchange of least cost
/// increase. Candidate lists restrict the scanned pairs; when no candidate
/// crosses subtours (or no lists are given) the scan is exhaustive.
Tour merge_subtours(const CostEvaluator& dist, const SubtourSet& s,
                    const CandidateLists* cl = nullptr);

/// Full five-step crossover: up to r offspring, each from a fresh E-set
/// draw. Identical parents yield a single copy of sa.
std::vector<Tour> eax_crossover(const Tour& sa, const Tour& sb, int r,
                                const ESetStrategy& strategy, std::mt19937_64& rng,
                                const CostEvaluator& dist,
                                const CandidateLists* cl = nullptr);

struct GenerationStats {
    std::int64_t best = 0;
    double average = 0.0;
    double elapsed_seconds = 0.0;
};

struct SolveResult {
    Tour best_tour;
    std::int64_t best_cost = 0;
    int generations = 0;
    double wall_seconds = 0.0;
    std::vector<GenerationStats> history; // one record per generation, best non-increasing
};

/// Runs the generational loop: shuffled population, cyclic parent pairs,
/// r offspring per pair, per-slot replacement by the best of offspring and
/// parent. Stops when the population's average-minus-best cost drops below
/// termination_epsilon or on the generation cap. Deterministic for a fixed
/// seed.
SolveResult ga_solve(const CostEvaluator& dist, const GaConfig& cfg);

} // namespace ctsp
