#include "ctsp/ga_eax.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <limits>
#include <numeric>
#include <thread>

#include "ctsp/rng.hpp"

namespace ctsp {

void validate(const GaConfig& cfg) {
    if (cfg.population_size < 2) throw InvalidConfig("population size must be >= 2");
    if (cfg.offspring_per_pair < 1) throw InvalidConfig("offspring per pair must be >= 1");
    if (!(cfg.termination_epsilon > 0.0))
        throw InvalidConfig("termination epsilon must be positive");
    if (cfg.max_generations < 0) throw InvalidConfig("max_generations must be >= 0");
    if (cfg.candidate_k < 1) throw InvalidConfig("candidate_k must be >= 1");
    if (cfg.strategy.kind == ESetStrategy::Kind::KMultiple && cfg.strategy.k < 1)
        throw InvalidConfig("k-multiple strategy needs k >= 1");
}

UnionGraph build_union_graph(const Tour& sa, const Tour& sb) {
    const int n = sa.n();
    if (sb.n() != n || !is_permutation_1n(sa.order, n) || !is_permutation_1n(sb.order, n))
        throw VertexSetMismatch("parents must be tours over the same vertex set");

    UnionGraph g;
    g.n = n;
    g.a_adj.assign(n + 1, {0, 0});
    g.b_adj.assign(n + 1, {0, 0});
    g.a_common.assign(n + 1, {false, false});
    g.b_common.assign(n + 1, {false, false});

    auto fill = [n](const Tour& t, std::vector<std::array<int, 2>>& adj) {
        for (int i = 0; i < n; ++i) {
            const int u = t.order[i];
            adj[u][0] = t.order[(i + n - 1) % n];
            adj[u][1] = t.order[(i + 1) % n];
        }
    };
    fill(sa, g.a_adj);
    fill(sb, g.b_adj);

    for (int v = 1; v <= n; ++v) {
        for (int s = 0; s < 2; ++s) {
            const int u = g.a_adj[v][s];
            g.a_common[v][s] = (g.b_adj[v][0] == u || g.b_adj[v][1] == u);
            const int w = g.b_adj[v][s];
            g.b_common[v][s] = (g.a_adj[v][0] == w || g.a_adj[v][1] == w);
        }
    }
    return g;
}

namespace {

// Unused non-common edges per vertex and tag; at every vertex the A and B
// counts are equal, which is what lets the alternating walk always continue
// or close a cycle.
struct AvailEdges {
    std::array<int, 2> verts{};
    int count = 0;

    void remove(int u) {
        if (count >= 1 && verts[0] == u) {
            verts[0] = verts[1];
            --count;
        } else {
            assert(count == 2 && verts[1] == u);
            --count;
        }
    }
};

} // namespace

std::vector<ABCycle> extract_ab_cycles(const UnionGraph& g, std::mt19937_64& rng) {
    const int n = g.n;
    std::vector<AvailEdges> avail_a(n + 1), avail_b(n + 1);
    for (int v = 1; v <= n; ++v) {
        for (int s = 0; s < 2; ++s) {
            if (!g.a_common[v][s]) avail_a[v].verts[avail_a[v].count++] = g.a_adj[v][s];
            if (!g.b_common[v][s]) avail_b[v].verts[avail_b[v].count++] = g.b_adj[v][s];
        }
        assert(avail_a[v].count == avail_b[v].count);
    }

    std::vector<int> pending; // vertices that may still have unused edges
    pending.reserve(n);
    for (int v = 1; v <= n; ++v)
        if (avail_a[v].count > 0) pending.push_back(v);

    std::vector<ABCycle> cycles;
    // seen[tag][v]: walk position where state (v, next-edge-tag) occurred
    std::vector<int> seen[2] = {std::vector<int>(n + 1, -1), std::vector<int>(n + 1, -1)};
    std::vector<int> path;
    path.reserve(2 * n + 2);

    while (!pending.empty()) {
        // pick a random start that still has unused edges
        const std::size_t pick = uniform_below(rng, pending.size());
        const int start = pending[pick];
        if (avail_a[start].count == 0) {
            pending[pick] = pending.back();
            pending.pop_back();
            continue;
        }

        path.clear();
        path.push_back(start);
        while (true) {
            const int v = path.back();
            const int tag = static_cast<int>(path.size() - 1) % 2; // 0 = A, 1 = B

            const int p = seen[tag][v];
            if (p >= 0) {
                // States (v,tag) repeat: the walk between them alternates and
                // is closed, so it is an AB-cycle.
                ABCycle cycle;
                cycle.verts.assign(path.begin() + p, path.end() - 1);
                if (p % 2 != 0) // rotate so edge 0 carries tag A
                    std::rotate(cycle.verts.begin(), cycle.verts.begin() + 1,
                                cycle.verts.end());
                for (std::size_t q = p; q + 1 < path.size(); ++q)
                    seen[q % 2][path[q]] = -1;
                path.resize(p + 1);
                assert(cycle.verts.size() % 2 == 0 && cycle.verts.size() >= 4);
                cycles.push_back(std::move(cycle));
                if (path.size() == 1 && avail_a[path[0]].count == 0) break;
                continue;
            }

            auto& avail = tag == 0 ? avail_a[v] : avail_b[v];
            assert(avail.count > 0);
            const int u = avail.verts[avail.count == 1
                                          ? 0
                                          : static_cast<int>(uniform_below(rng, 2))];
            avail.remove(u);
            (tag == 0 ? avail_a[u] : avail_b[u]).remove(v);
            seen[tag][v] = static_cast<int>(path.size()) - 1;
            path.push_back(u);
        }
    }
    return cycles;
}

ESet select_eset(const std::vector<ABCycle>& cycles, const ESetStrategy& strategy,
                 std::mt19937_64& rng) {
    if (cycles.empty()) throw EmptyCycles("no AB-cycles to select from");

    ESet eset;
    if (strategy.kind == ESetStrategy::Kind::Single) {
        eset.cycles.push_back(cycles[uniform_below(rng, cycles.size())]);
        return eset;
    }

    const std::size_t take =
        std::min<std::size_t>(static_cast<std::size_t>(strategy.k), cycles.size());
    std::vector<std::size_t> idx(cycles.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < take; ++i)
        std::swap(idx[i], idx[i + uniform_below(rng, idx.size() - i)]);
    eset.cycles.reserve(take);
    for (std::size_t i = 0; i < take; ++i) eset.cycles.push_back(cycles[idx[i]]);
    return eset;
}

SubtourSet apply_eset(const Tour& sa, const ESet& eset) {
    const int n = sa.n();
    SubtourSet out;
    out.n = n;
    out.adj.assign(n + 1, {0, 0});
    for (int i = 0; i < n; ++i) {
        const int u = sa.order[i];
        out.adj[u][0] = sa.order[(i + n - 1) % n];
        out.adj[u][1] = sa.order[(i + 1) % n];
    }

    auto remove_edge = [&](int u, int v) {
        auto& e = out.adj[u];
        if (e[0] == v)
            e[0] = 0;
        else if (e[1] == v)
            e[1] = 0;
        else
            throw InconsistentESet("E-set removes an edge parent A does not have");
    };
    auto add_edge = [&](int u, int v) {
        auto& e = out.adj[u];
        if (e[0] == 0)
            e[0] = v;
        else if (e[1] == 0)
            e[1] = v;
        else
            throw InconsistentESet("E-set drives a vertex above degree 2");
    };

    for (const auto& cycle : eset.cycles) {
        const int len = cycle.edge_count();
        for (int i = 0; i < len; i += 2) { // A-tagged edges
            remove_edge(cycle.verts[i], cycle.verts[(i + 1) % len]);
            remove_edge(cycle.verts[(i + 1) % len], cycle.verts[i]);
        }
    }
    for (const auto& cycle : eset.cycles) {
        const int len = cycle.edge_count();
        for (int i = 1; i < len; i += 2) { // B-tagged edges
            add_edge(cycle.verts[i], cycle.verts[(i + 1) % len]);
            add_edge(cycle.verts[(i + 1) % len], cycle.verts[i]);
        }
    }

    out.subtour_of.assign(n + 1, 0);
    for (int v = 1; v <= n; ++v) {
        if (out.adj[v][0] == 0 || out.adj[v][1] == 0)
            throw InconsistentESet("vertex left below degree 2");
        if (out.subtour_of[v] != 0) continue;
        const int label = ++out.count;
        int prev = 0, cur = v;
        do {
            out.subtour_of[cur] = label;
            const int nxt = out.adj[cur][0] == prev ? out.adj[cur][1] : out.adj[cur][0];
            prev = cur;
            cur = nxt;
        } while (cur != v);
    }
    return out;
}

namespace {

struct MergeMove {
    std::int64_t delta = std::numeric_limits<std::int64_t>::max();
    int a = 0, b = 0, c = 0, d = 0;

    void consider(const CostEvaluator& dist, int a_, int b_, int c_, int d_) {
        const std::int64_t delta_ = dist(a_, c_) + dist(b_, d_) - dist(a_, b_) - dist(c_, d_);
        if (delta_ < delta) {
            delta = delta_;
            a = a_;
            b = b_;
            c = c_;
            d = d_;
        }
    }
};

} // namespace

Tour merge_subtours(const CostEvaluator& dist, const SubtourSet& s,
                    const CandidateLists* cl) {
    const int n = s.n;
    auto adj = s.adj;
    auto label = s.subtour_of;

    std::vector<std::vector<int>> members(s.count + 1);
    for (int v = 1; v <= n; ++v) members[label[v]].push_back(v);

    std::int64_t total = 0;
    for (int v = 1; v <= n; ++v) total += dist(v, adj[v][0]) + dist(v, adj[v][1]);
    total /= 2;

    int alive = s.count;
    while (alive > 1) {
        int small = 0;
        for (int l = 1; l <= s.count; ++l) {
            if (members[l].empty()) continue;
            if (small == 0 || members[l].size() < members[small].size()) small = l;
        }

        MergeMove best;
        if (cl) {
            for (int a : members[small])
                for (int c : cl->lists[a]) {
                    if (label[c] == small) continue;
                    for (int sb = 0; sb < 2; ++sb)
                        for (int sd = 0; sd < 2; ++sd)
                            best.consider(dist, a, adj[a][sb], c, adj[c][sd]);
                }
        }
        if (best.a == 0) { // no candidate crosses subtours: exhaustive scan
            for (int a : members[small])
                for (int c = 1; c <= n; ++c) {
                    if (label[c] == small) continue;
                    for (int sb = 0; sb < 2; ++sb)
                        for (int sd = 0; sd < 2; ++sd)
                            best.consider(dist, a, adj[a][sb], c, adj[c][sd]);
                }
        }

        // replace (a,b),(c,d) with (a,c),(b,d)
        auto relink = [&](int u, int from, int to) {
            if (adj[u][0] == from)
                adj[u][0] = to;
            else
                adj[u][1] = to;
        };
        relink(best.a, best.b, best.c);
        relink(best.c, best.d, best.a);
        relink(best.b, best.a, best.d);
        relink(best.d, best.c, best.b);
        total += best.delta;

        const int other = label[best.c];
        auto& into = members[other].size() >= members[small].size() ? members[other]
                                                                    : members[small];
        auto& from = members[other].size() >= members[small].size() ? members[small]
                                                                    : members[other];
        const int keep = label[into.front()];
        for (int v : from) label[v] = keep;
        into.insert(into.end(), from.begin(), from.end());
        from.clear();
        --alive;
    }

    Tour t;
    t.order.reserve(n);
    int prev = 0, cur = 1;
    do {
        t.order.push_back(cur);
        const int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = nxt;
    } while (cur != 1 && static_cast<int>(t.order.size()) <= n);
    t.cost = total;
    assert(static_cast<int>(t.order.size()) == n);
    return t;
}

std::vector<Tour> eax_crossover(const Tour& sa, const Tour& sb, int r,
                                const ESetStrategy& strategy, std::mt19937_64& rng,
                                const CostEvaluator& dist, const CandidateLists* cl) {
    const UnionGraph g = build_union_graph(sa, sb);
    const std::vector<ABCycle> cycles = extract_ab_cycles(g, rng);
    if (cycles.empty()) return {sa}; // identical parents

    std::vector<Tour> offspring;
    offspring.reserve(r);
    for (int j = 0; j < r; ++j) {
        const ESet eset = select_eset(cycles, strategy, rng);
        const SubtourSet intermediate = apply_eset(sa, eset);
        offspring.push_back(merge_subtours(dist, intermediate, cl));
    }
    return offspring;
}

SolveResult ga_solve(const CostEvaluator& dist, const GaConfig& cfg) {
    validate(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&t0] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    const int n = dist.n();
    if (n == 1) {
        SolveResult trivial;
        trivial.best_tour = Tour{{1}, 0};
        trivial.history.push_back({0, 0.0, elapsed()});
        trivial.wall_seconds = elapsed();
        return trivial;
    }
    const int p = cfg.population_size;
    std::mt19937_64 rng(cfg.seed);
    const CandidateLists cl = build_candidate_lists(dist, std::min(cfg.candidate_k, n - 1));

    // Initial population: nearest-neighbor from a random start, then 2-opt
    // and Or-opt. Seeds are drawn up front so the parallel build is
    // deterministic regardless of scheduling.
    std::vector<int> starts(p);
    std::vector<std::uint64_t> seeds(p);
    for (int i = 0; i < p; ++i) {
        starts[i] = 1 + static_cast<int>(uniform_below(rng, n));
        seeds[i] = rng();
    }
    std::vector<Tour> pop(p);
    {
        unsigned hw = cfg.threads > 0 ? cfg.threads : std::thread::hardware_concurrency();
        if (hw == 0) hw = 1;
        const unsigned workers = std::min<unsigned>(hw, p);
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            threads.emplace_back([&, w] {
                for (int i = static_cast<int>(w); i < p; i += static_cast<int>(workers)) {
                    std::mt19937_64 local(seeds[i]);
                    Tour t = nearest_neighbor_tour(dist, starts[i], local, &cl);
                    t = two_opt(dist, t, cl);
                    pop[i] = or_opt(dist, t, cl);
                }
            });
        for (auto& th : threads) th.join();
    }

    SolveResult result;
    std::vector<int> mating(p);
    std::iota(mating.begin(), mating.end(), 0);

    while (true) {
        std::int64_t best = pop[0].cost;
        double sum = 0.0;
        int best_idx = 0;
        for (int i = 0; i < p; ++i) {
            sum += static_cast<double>(pop[i].cost);
            if (pop[i].cost < best) {
                best = pop[i].cost;
                best_idx = i;
            }
        }
        const double avg = sum / p;
        result.history.push_back({best, avg, elapsed()});
        result.best_tour = pop[best_idx];
        result.best_cost = best;

        if (avg - static_cast<double>(best) < cfg.termination_epsilon) break;
        if (result.generations >= cfg.max_generations) break;
        if (cfg.time_limit_seconds > 0.0 && elapsed() >= cfg.time_limit_seconds) break;

        fisher_yates_shuffle(mating, rng);
        for (int i = 0; i < p; ++i) {
            Tour& parent = pop[mating[i]];
            const Tour& mate = pop[mating[(i + 1) % p]];
            const std::vector<Tour> kids =
                eax_crossover(parent, mate, cfg.offspring_per_pair, cfg.strategy, rng,
                              dist, &cl);
            const Tour* best_kid = nullptr;
            for (const Tour& kid : kids)
                if (!best_kid || kid.cost < best_kid->cost) best_kid = &kid;
            if (best_kid && best_kid->cost < parent.cost) parent = *best_kid;
        }
        ++result.generations;
    }

    result.wall_seconds = elapsed();
    return result;
}

} // namespace ctsp
