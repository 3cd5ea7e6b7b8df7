#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ctsp/errors.hpp"

namespace ctsp {

enum class DistanceKind {
    Euc2dRounded,   // nearest-integer Euclidean distance on 2D coordinates
    ExplicitMatrix, // symmetric integer matrix given in the file
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

/// A clustered TSP instance. Vertex ids are dense 1..n; every vertex belongs
/// to exactly one of the m clusters. Immutable once built.
struct Instance {
    std::string name;
    int n = 0;
    int m = 0;
    DistanceKind kind = DistanceKind::Euc2dRounded;

    // kind == Euc2dRounded: coords[v] for v in 1..n (slot 0 unused).
    std::vector<Point> coords;
    // kind == ExplicitMatrix: weights[i * (n + 1) + j], diagonal zero.
    std::vector<std::int64_t> weights;

    // clusters[k] holds cluster k+1 in file order; ids are 1-based.
    std::vector<std::vector<int>> clusters;
    // cluster_of[v] in 1..m for v in 1..n (slot 0 unused).
    std::vector<int> cluster_of;

    bool operator==(const Instance&) const = default;

    std::int64_t weight_at(int i, int j) const {
        return weights[static_cast<std::size_t>(i) * (n + 1) + j];
    }
};

struct GeneratorConfig {
    int n = 0;
    int m = 0;
    double cluster_spread = 10.0;
    double field_size = 1000.0;
    std::uint64_t seed = 0;
};

/// Parses a GTSPLIB/TSPLIB text stream. Vertex ids are remapped to a dense
/// 1..n range preserving file order.
/// Throws MissingSection, PartitionError, DimensionMismatch,
/// UnsupportedEdgeWeightType or ParseError.
Instance parse_instance(std::istream& text);
Instance parse_instance(const std::string& text);
Instance parse_instance_file(const std::string& path);

/// Symmetric nonnegative integer cost between two distinct vertices.
/// EUC_2D uses the nearest-integer rule (halves round up).
/// Throws SelfLoop when i == j.
std::int64_t distance(const Instance& inst, int i, int j);

/// Maximum pairwise distance c_max (exact, O(n^2) pair scan).
std::int64_t max_distance(const Instance& inst);

/// Synthesizes a clustered instance: m cluster centers in a square field,
/// vertices Gaussian-scattered around them. Deterministic for a fixed seed.
/// Throws InvalidConfig.
Instance generate_clustered(const GeneratorConfig& cfg);

/// Writes the GTSPLIB text form; parse_instance(write_instance(inst))
/// reproduces inst exactly.
void write_instance(const Instance& inst, std::ostream& out);
std::string write_instance(const Instance& inst);

/// Checks every Instance invariant (partition, symmetry bounds, overflow
/// headroom); throws the matching error. Parsing and generation run this
/// before returning.
void validate(const Instance& inst);

} // namespace ctsp
