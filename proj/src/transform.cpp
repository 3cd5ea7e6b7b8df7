#include "ctsp/transform.hpp"

#include <limits>
#include <ostream>

namespace ctsp {

std::int64_t big_m_value(const Instance& inst) {
    const std::int64_t c_max = max_distance(inst);
    const __int128 m128 = static_cast<__int128>(inst.n) * c_max + 1;
    // Both M itself and the worst-case transformed tour cost
    // n*c_max + n*M must stay inside 64-bit signed range.
    const __int128 worst = static_cast<__int128>(inst.n) * c_max + static_cast<__int128>(inst.n) * m128;
    if (worst > std::numeric_limits<std::int64_t>::max())
        throw Overflow("dominance-safe big-M not representable in 64 bits");
    return static_cast<std::int64_t>(m128);
}

TspInstance to_tsp(const Instance& inst) {
    return to_tsp(std::make_shared<const Instance>(inst));
}

TspInstance to_tsp(std::shared_ptr<const Instance> inst) {
    TspInstance out;
    out.big_m = big_m_value(*inst);
    out.cost = CostEvaluator::transformed(inst, out.big_m);
    out.source = std::move(inst);
    return out;
}

std::int64_t recover_cost(std::int64_t tsp_cost, int m, std::int64_t big_m) {
    const std::int64_t offset = static_cast<std::int64_t>(m) * big_m;
    if (tsp_cost < offset)
        throw NegativeResult("transformed cost below m*M: tour was not cluster-feasible");
    return tsp_cost - offset;
}

LiftResult lift_tour(const Tour& tsp_tour, const Instance& inst) {
    LiftResult out;
    out.tour.order = tsp_tour.order;
    out.tour.cost = tour_cost(inst, out.tour);
    out.feasible = is_cluster_contiguous(inst, out.tour);
    return out;
}

void write_transformed(const TspInstance& tsp, std::ostream& out) {
    const int n = tsp.n();
    if (n > 3000)
        throw TooLarge("explicit matrix export limited to n <= 3000");
    out << "NAME : " << tsp.source->name << "-tsp\n";
    out << "TYPE : TSP\n";
    out << "COMMENT : big-M transform of " << tsp.source->name
        << " M=" << tsp.big_m << " m=" << tsp.m() << "\n";
    out << "DIMENSION : " << n << "\n";
    out << "EDGE_WEIGHT_TYPE : EXPLICIT\n";
    out << "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n";
    out << "EDGE_WEIGHT_SECTION\n";
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j)
            out << (j > 1 ? " " : "") << (i == j ? 0 : tsp.cost(i, j));
        out << "\n";
    }
    out << "EOF\n";
}

} // namespace ctsp
