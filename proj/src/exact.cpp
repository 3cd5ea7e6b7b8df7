#include "ctsp/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>

namespace ctsp {

namespace {

constexpr std::int64_t kEnumerationGuard = 10'000'000;

__int128 factorial(int k) {
    __int128 f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace

Tour brute_force_ctsp(const Instance& inst) {
    __int128 space = factorial(inst.m);
    for (const auto& cluster : inst.clusters) {
        space *= factorial(static_cast<int>(cluster.size()) - 1);
        if (space > kEnumerationGuard)
            throw TooLarge("cluster enumeration space exceeds guard");
    }

    const CostEvaluator dist = CostEvaluator::plain(inst);
    const int n = inst.n;
    const int m = inst.m;
    if (n == 1) return Tour{{1}, 0};

    std::vector<int> order(n);
    Tour best;
    best.cost = std::numeric_limits<std::int64_t>::max();
    std::vector<int> best_canon;

    auto consider = [&] {
        std::int64_t cost = 0;
        for (int i = 0; i < n; ++i) cost += dist(order[i], order[(i + 1) % n]);
        if (cost > best.cost) return;
        Tour t{order, cost};
        if (cost < best.cost) {
            best = std::move(t);
            best_canon = canonicalize(best).order;
            return;
        }
        auto canon = canonicalize(t).order;
        if (canon < best_canon) {
            best = std::move(t);
            best_canon = std::move(canon);
        }
    };

    if (m == 1) {
        // one cluster: fix the first vertex to cancel rotations
        std::vector<int> rest(inst.clusters[0].begin() + 1, inst.clusters[0].end());
        std::sort(rest.begin(), rest.end());
        const int anchor = inst.clusters[0][0];
        do {
            order[0] = anchor;
            std::copy(rest.begin(), rest.end(), order.begin() + 1);
            consider();
        } while (std::next_permutation(rest.begin(), rest.end()));
        return best;
    }

    // cluster blocks: block 0 is pinned first (cancels rotations of the
    // block sequence); remaining blocks permute freely, and every cluster
    // enumerates all internal paths
    std::vector<std::vector<int>> paths(m);
    for (int k = 0; k < m; ++k) {
        paths[k] = inst.clusters[k];
        std::sort(paths[k].begin(), paths[k].end());
    }
    std::vector<int> block_order(m - 1);
    for (int k = 1; k < m; ++k) block_order[k - 1] = k;

    auto assemble = [&] {
        int idx = 0;
        for (int v : paths[0]) order[idx++] = v;
        for (int k : block_order)
            for (int v : paths[k]) order[idx++] = v;
        consider();
    };

    // odometer over the within-cluster permutations
    auto enumerate_paths = [&](auto&& self, int k) -> void {
        if (k == m) {
            assemble();
            return;
        }
        std::sort(paths[k].begin(), paths[k].end());
        do {
            self(self, k + 1);
        } while (std::next_permutation(paths[k].begin(), paths[k].end()));
    };

    do {
        enumerate_paths(enumerate_paths, 0);
    } while (std::next_permutation(block_order.begin(), block_order.end()));

    return best;
}

Tour brute_force_tsp(const CostEvaluator& dist) {
    const int n = dist.n();
    if (n > 12) throw TooLarge("Held-Karp limited to n <= 12");
    if (n == 1) return Tour{{1}, 0};
    if (n == 2) return Tour{{1, 2}, 2 * dist(1, 2)};

    const int k = n - 1; // vertices 2..n mapped to bits 0..k-1
    const std::size_t full = std::size_t(1) << k;
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> dp(full * k, inf);
    std::vector<std::int8_t> par(full * k, -1);

    for (int j = 0; j < k; ++j) dp[(std::size_t(1) << j) * k + j] = dist(1, j + 2);

    for (std::size_t mask = 1; mask < full; ++mask) {
        for (int j = 0; j < k; ++j) {
            if (!(mask & (std::size_t(1) << j))) continue;
            const std::int64_t d = dp[mask * k + j];
            if (d >= inf) continue;
            for (int t = 0; t < k; ++t) {
                if (mask & (std::size_t(1) << t)) continue;
                const std::size_t nmask = mask | (std::size_t(1) << t);
                const std::int64_t nd = d + dist(j + 2, t + 2);
                if (nd < dp[nmask * k + t]) {
                    dp[nmask * k + t] = nd;
                    par[nmask * k + t] = static_cast<std::int8_t>(j);
                }
            }
        }
    }

    const std::size_t all = full - 1;
    std::int64_t best = inf;
    int last = -1;
    for (int j = 0; j < k; ++j) {
        const std::int64_t total = dp[all * k + j] + dist(j + 2, 1);
        if (total < best) {
            best = total;
            last = j;
        }
    }

    Tour t;
    t.cost = best;
    t.order.assign(n, 0);
    std::size_t mask = all;
    for (int i = n - 1; i >= 1; --i) {
        t.order[i] = last + 2;
        const int prev = par[mask * k + last];
        mask &= ~(std::size_t(1) << last);
        last = prev;
    }
    t.order[0] = 1;
    return t;
}

namespace {

// Emits CPLEX-LP rows with coefficient signs and line wrapping handled.
class LpWriter {
public:
    void comment(const std::string& text) { out_ << "\\ " << text << "\n"; }
    void section(const char* name) { out_ << name << "\n"; }

    void begin_row(const std::string& name) {
        line_ = " " + name + ":";
        terms_ = 0;
    }

    void term(std::int64_t coef, const std::string& var) {
        std::string piece;
        if (terms_ == 0)
            piece = (coef < 0 ? " -" : " ") + magnitude(coef);
        else
            piece = (coef < 0 ? " - " : " + ") + magnitude(coef);
        piece += " " + var;
        if (line_.size() + piece.size() > 200) {
            out_ << line_ << "\n";
            line_ = "   ";
        }
        line_ += piece;
        ++terms_;
    }

    void end_row(const char* sense, std::int64_t rhs) {
        out_ << line_ << " " << sense << " " << rhs << "\n";
        line_.clear();
    }

    void end_objective() {
        out_ << line_ << "\n";
        line_.clear();
    }

    void bound(const std::string& text) { out_ << " " << text << "\n"; }

    void names(const std::vector<std::string>& vars) {
        std::string line = " ";
        for (const auto& v : vars) {
            if (line.size() + v.size() + 1 > 200) {
                out_ << line << "\n";
                line = " ";
            }
            line += v + " ";
        }
        out_ << line << "\n";
    }

    std::string str() const { return out_.str(); }

private:
    static std::string magnitude(std::int64_t coef) {
        return std::to_string(coef < 0 ? -coef : coef);
    }

    std::ostringstream out_;
    std::string line_;
    int terms_ = 0;
};

std::string xvar(int i, int j) {
    return "x_" + std::to_string(i) + "_" + std::to_string(j);
}

std::string yvar(int k, int i, int j) {
    return "y_" + std::to_string(k) + "_" + std::to_string(i) + "_" + std::to_string(j);
}

void emit_objective(LpWriter& lp, const Instance& inst) {
    lp.section("Minimize");
    lp.begin_row("obj");
    for (int i = 1; i <= inst.n; ++i)
        for (int j = 1; j <= inst.n; ++j)
            if (i != j) lp.term(distance(inst, i, j), xvar(i, j));
    lp.end_objective();
}

// Degree rows (one departure and one arrival per city) and the
// per-cluster contiguity rows over directed within-cluster arcs (i != j).
// A singleton cluster's row degenerates to fixing its self-arc, which is
// zero anyway.
void emit_common_rows(LpWriter& lp, const Instance& inst) {
    const int n = inst.n;
    for (int i = 1; i <= n; ++i) {
        lp.begin_row("out_" + std::to_string(i));
        for (int j = 1; j <= n; ++j) lp.term(1, xvar(i, j));
        lp.end_row("=", 1);
    }
    for (int j = 1; j <= n; ++j) {
        lp.begin_row("in_" + std::to_string(j));
        for (int i = 1; i <= n; ++i) lp.term(1, xvar(i, j));
        lp.end_row("=", 1);
    }
    for (int k = 0; k < inst.m; ++k) {
        const auto& cluster = inst.clusters[k];
        lp.begin_row("cluster_" + std::to_string(k + 1));
        if (cluster.size() == 1) {
            lp.term(1, xvar(cluster[0], cluster[0]));
        } else {
            for (int i : cluster)
                for (int j : cluster)
                    if (i != j) lp.term(1, xvar(i, j));
        }
        lp.end_row("=", static_cast<std::int64_t>(cluster.size()) - 1);
    }
}

void emit_binaries(LpWriter& lp, const Instance& inst) {
    lp.section("Binaries");
    std::vector<std::string> vars;
    vars.reserve(static_cast<std::size_t>(inst.n) * inst.n);
    for (int i = 1; i <= inst.n; ++i)
        for (int j = 1; j <= inst.n; ++j) vars.push_back(xvar(i, j));
    lp.names(vars);
}

} // namespace

std::string export_mtz_model(const Instance& inst) {
    if (inst.n > 3000) throw TooLarge("MTZ export limited to n <= 3000");
    const int n = inst.n;

    LpWriter lp;
    lp.comment("MTZ formulation of CTSP instance " + inst.name +
               " (n=" + std::to_string(n) + ", m=" + std::to_string(inst.m) + ")");
    emit_objective(lp, inst);

    lp.section("Subject To");
    emit_common_rows(lp, inst);
    // ordering rows: u_i - u_j + (n-1) x_ij <= n-2 for 2 <= i != j <= n
    for (int i = 2; i <= n; ++i) {
        for (int j = 2; j <= n; ++j) {
            if (i == j) continue;
            lp.begin_row("mtz_" + std::to_string(i) + "_" + std::to_string(j));
            lp.term(1, "u_" + std::to_string(i));
            lp.term(-1, "u_" + std::to_string(j));
            lp.term(n - 1, xvar(i, j));
            lp.end_row("<=", n - 2);
        }
    }

    lp.section("Bounds");
    for (int i = 1; i <= n; ++i) lp.bound(xvar(i, i) + " = 0");
    for (int i = 2; i <= n; ++i) lp.bound("u_" + std::to_string(i) + " >= 0");

    emit_binaries(lp, inst);
    lp.section("End");
    return lp.str();
}

std::string export_mcf_model(const Instance& inst) {
    if (inst.n > 200) throw TooLarge("MCF export limited to n <= 200");
    const int n = inst.n;

    LpWriter lp;
    lp.comment("Multi-commodity-flow formulation of CTSP instance " + inst.name +
               " (n=" + std::to_string(n) + ", m=" + std::to_string(inst.m) + ")");
    emit_objective(lp, inst);

    lp.section("Subject To");
    emit_common_rows(lp, inst);
    for (int k = 2; k <= n; ++k) {
        // capacity coupling: y <= x on every arc
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                lp.begin_row("cap_" + std::to_string(k) + "_" + std::to_string(i) +
                             "_" + std::to_string(j));
                lp.term(1, yvar(k, i, j));
                lp.term(-1, xvar(i, j));
                lp.end_row("<=", 0);
            }
        // city 1 sources one unit of commodity k
        lp.begin_row("src_" + std::to_string(k));
        for (int i = 2; i <= n; ++i) lp.term(1, yvar(k, 1, i));
        lp.end_row("=", 1);
        // no flow returns to city 1
        lp.begin_row("back_" + std::to_string(k));
        for (int i = 2; i <= n; ++i) lp.term(1, yvar(k, i, 1));
        lp.end_row("=", 0);
        // one unit enters city k
        lp.begin_row("sink_" + std::to_string(k));
        for (int i = 1; i <= n; ++i) lp.term(1, yvar(k, i, k));
        lp.end_row("=", 1);
        // nothing leaves city k
        lp.begin_row("leave_" + std::to_string(k));
        for (int j = 1; j <= n; ++j) lp.term(1, yvar(k, k, j));
        lp.end_row("=", 0);
        // conservation elsewhere
        for (int j = 2; j <= n; ++j) {
            if (j == k) continue;
            lp.begin_row("bal_" + std::to_string(k) + "_" + std::to_string(j));
            for (int i = 1; i <= n; ++i) lp.term(1, yvar(k, i, j));
            for (int i = 1; i <= n; ++i) lp.term(-1, yvar(k, j, i));
            lp.end_row("=", 0);
        }
    }

    lp.section("Bounds");
    for (int i = 1; i <= n; ++i) lp.bound(xvar(i, i) + " = 0");

    emit_binaries(lp, inst);
    lp.section("End");
    return lp.str();
}

} // namespace ctsp
