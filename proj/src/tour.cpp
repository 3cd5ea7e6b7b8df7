#include "ctsp/tour.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace ctsp {

bool is_permutation_1n(const std::vector<int>& order, int n) {
    if (static_cast<int>(order.size()) != n) return false;
    std::vector<bool> seen(n + 1, false);
    for (int v : order) {
        if (v < 1 || v > n || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

std::int64_t tour_cost(const Instance& inst, const Tour& t) {
    if (!is_permutation_1n(t.order, inst.n))
        throw NotAPermutation("tour is not a permutation of 1..n");
    const int n = inst.n;
    if (n == 1) return 0;
    std::int64_t total = 0;
    for (int k = 0; k < n; ++k)
        total += distance(inst, t.order[k], t.order[(k + 1) % n]);
    return total;
}

std::int64_t tour_cost(const CostEvaluator& dist, const std::vector<int>& order) {
    if (!is_permutation_1n(order, dist.n()))
        throw NotAPermutation("tour is not a permutation of 1..n");
    const int n = dist.n();
    if (n == 1) return 0;
    std::int64_t total = 0;
    for (int k = 0; k < n; ++k)
        total += dist(order[k], order[(k + 1) % n]);
    return total;
}

Tour make_tour(const CostEvaluator& dist, std::vector<int> order) {
    Tour t;
    t.cost = tour_cost(dist, order);
    t.order = std::move(order);
    return t;
}

bool is_cluster_contiguous(const Instance& inst, const Tour& t) {
    if (inst.m == 1) return true;
    return inter_cluster_edge_count(inst, t) == inst.m;
}

int inter_cluster_edge_count(const Instance& inst, const Tour& t) {
    const int n = inst.n;
    int crossings = 0;
    for (int k = 0; k < n; ++k) {
        const int a = t.order[k];
        const int b = t.order[(k + 1) % n];
        if (inst.cluster_of[a] != inst.cluster_of[b]) ++crossings;
    }
    return crossings;
}

Tour canonicalize(const Tour& t) {
    const int n = t.n();
    Tour out;
    out.cost = t.cost;
    out.order.resize(n);
    const auto it = std::find(t.order.begin(), t.order.end(), 1);
    const int p = static_cast<int>(it - t.order.begin());
    for (int k = 0; k < n; ++k) out.order[k] = t.order[(p + k) % n];
    if (n >= 3 && out.order[n - 1] < out.order[1])
        std::reverse(out.order.begin() + 1, out.order.end());
    return out;
}

void write_tour(const Tour& t, std::ostream& out) {
    out << "COST " << t.cost << "\n";
    for (int k = 0; k < t.n(); ++k) out << (k > 0 ? " " : "") << t.order[k];
    out << "\n";
}

std::string write_tour(const Tour& t) {
    std::ostringstream out;
    write_tour(t, out);
    return out.str();
}

Tour read_tour(std::istream& in) {
    std::string tag;
    Tour t;
    if (!(in >> tag) || tag != "COST" || !(in >> t.cost))
        throw ParseError("tour file must start with 'COST <integer>'");
    int v;
    while (in >> v) t.order.push_back(v);
    if (t.order.empty()) throw ParseError("tour file lists no vertices");
    return t;
}

Tour read_tour_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open tour file: " + path);
    return read_tour(in);
}

} // namespace ctsp
