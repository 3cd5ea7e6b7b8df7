#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ctsp/cost.hpp"
#include "ctsp/instance.hpp"

namespace ctsp {

/// A cyclic tour: a permutation of 1..n with its cached total length. The
/// anchor (index 0) is arbitrary; two tours are the same cycle iff their
/// canonical forms are identical. Immutable by convention once built.
struct Tour {
    std::vector<int> order;
    std::int64_t cost = 0;

    int n() const { return static_cast<int>(order.size()); }
    bool operator==(const Tour&) const = default;
};

/// True iff order is a permutation of 1..n.
bool is_permutation_1n(const std::vector<int>& order, int n);

/// Cyclic edge-cost sum under the instance's own distances.
/// Throws NotAPermutation.
std::int64_t tour_cost(const Instance& inst, const Tour& t);

/// Cyclic edge-cost sum under an arbitrary cost view (e.g. transformed c').
std::int64_t tour_cost(const CostEvaluator& dist, const std::vector<int>& order);

/// Builds a Tour with its cost filled in.
Tour make_tour(const CostEvaluator& dist, std::vector<int> order);

/// True iff each cluster's vertices form one contiguous block in cyclic
/// order (always true for m = 1).
bool is_cluster_contiguous(const Instance& inst, const Tour& t);

/// Number of cyclic edges whose endpoints lie in different clusters; equals
/// m exactly when the tour is cluster-contiguous (m >= 2).
int inter_cluster_edge_count(const Instance& inst, const Tour& t);

/// Rotates vertex 1 to the front and reflects so the smaller neighbor of
/// vertex 1 comes second. Idempotent; cycles are equal iff canonical forms
/// are identical. The cached cost is preserved (rotation/reflection
/// invariant).
Tour canonicalize(const Tour& t);

/// Tour text format: "COST <integer>" then one line of n vertex ids.
void write_tour(const Tour& t, std::ostream& out);
std::string write_tour(const Tour& t);
Tour read_tour(std::istream& in);
Tour read_tour_file(const std::string& path);

} // namespace ctsp
