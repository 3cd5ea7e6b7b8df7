#include "ctsp/local_search.hpp"

#include <algorithm>
#include <cassert>

#include "ctsp/rng.hpp"

namespace ctsp {

CandidateLists build_candidate_lists(const CostEvaluator& dist, int k) {
    const int n = dist.n();
    if (k < 1) throw InvalidConfig("candidate list size must be >= 1");
    k = std::min(k, n - 1);

    CandidateLists cl;
    cl.k = k;
    cl.lists.assign(n + 1, {});

    std::vector<std::pair<std::int64_t, int>> buf;
    buf.reserve(n - 1);
    for (int v = 1; v <= n; ++v) {
        buf.clear();
        for (int u = 1; u <= n; ++u)
            if (u != v) buf.emplace_back(dist(v, u), u);
        std::partial_sort(buf.begin(), buf.begin() + k, buf.end());
        auto& list = cl.lists[v];
        list.reserve(k);
        for (int i = 0; i < k; ++i) list.push_back(buf[i].second);
    }
    return cl;
}

Tour nearest_neighbor_tour(const CostEvaluator& dist, int start, std::mt19937_64& rng,
                           const CandidateLists* cl) {
    const int n = dist.n();
    if (start < 1 || start > n) throw Error("start vertex out of range");

    std::vector<bool> visited(n + 1, false);
    std::vector<int> order;
    order.reserve(n);
    order.push_back(start);
    visited[start] = true;
    std::int64_t total = 0;

    int cur = start;
    for (int step = 1; step < n; ++step) {
        int chosen = 0;
        std::int64_t best = 0;
        // The candidate list is a prefix of the full sorted neighbor order,
        // so its first unvisited entry is the global nearest unvisited.
        if (cl) {
            std::uint64_t ties = 0;
            for (int u : cl->lists[cur]) {
                if (visited[u]) continue;
                const std::int64_t d = dist(cur, u);
                if (chosen == 0 || d < best) {
                    chosen = u;
                    best = d;
                    ties = 1;
                } else if (d == best && uniform_below(rng, ++ties) == 0) {
                    chosen = u;
                }
            }
        }
        if (chosen == 0) {
            std::uint64_t ties = 0;
            for (int u = 1; u <= n; ++u) {
                if (visited[u]) continue;
                const std::int64_t d = dist(cur, u);
                if (chosen == 0 || d < best) {
                    chosen = u;
                    best = d;
                    ties = 1;
                } else if (d == best && uniform_below(rng, ++ties) == 0) {
                    chosen = u;
                }
            }
        }
        visited[chosen] = true;
        order.push_back(chosen);
        total += best;
        cur = chosen;
    }
    total += n > 1 ? dist(cur, start) : 0;

    Tour t;
    t.order = std::move(order);
    t.cost = total;
    return t;
}

namespace {

class TourBuffer {
public:
    TourBuffer(const Tour& t)
        : order_(t.order), pos_(t.order.size() + 1), cost_(t.cost),
          n_(static_cast<int>(t.order.size())) {
        for (int i = 0; i < n_; ++i) pos_[order_[i]] = i;
    }

    int n() const { return n_; }
    std::int64_t cost() const { return cost_; }
    int succ(int v) const { return order_[next_pos(pos_[v])]; }
    int pred(int v) const { return order_[prev_pos(pos_[v])]; }
    int at(int p) const { return order_[p]; }
    int position(int v) const { return pos_[v]; }

    int next_pos(int p) const { return p + 1 == n_ ? 0 : p + 1; }
    int prev_pos(int p) const { return p == 0 ? n_ - 1 : p - 1; }

    // Reverses the cyclic position range [i..j], taking whichever arc is
    // shorter (the resulting cycle is the same either way).
    void reverse_arc(int i, int j) {
        int len = j - i;
        if (len < 0) len += n_;
        ++len;
        if (len > n_ - len) {
            const int ni = next_pos(j);
            j = prev_pos(i);
            i = ni;
            len = n_ - len;
        }
        for (int s = 0; s < len / 2; ++s) {
            int a = i + s;
            if (a >= n_) a -= n_;
            int b = j - s;
            if (b < 0) b += n_;
            std::swap(order_[a], order_[b]);
            pos_[order_[a]] = a;
            pos_[order_[b]] = b;
        }
    }

    // Moves the segment of `len` vertices starting at position i (given as
    // the vertex sequence seg, possibly reversed) to just after vertex c.
    void relocate(int i, int len, const std::vector<int>& seg, int c) {
        std::vector<int> rest;
        rest.reserve(n_ - len);
        int idx_c = -1;
        for (int s = 0, p = i + len >= n_ ? i + len - n_ : i + len;
             s < n_ - len; ++s, p = next_pos(p)) {
            rest.push_back(order_[p]);
            if (order_[p] == c) idx_c = static_cast<int>(rest.size()) - 1;
        }
        assert(idx_c >= 0);
        order_.clear();
        order_.insert(order_.end(), rest.begin(), rest.begin() + idx_c + 1);
        order_.insert(order_.end(), seg.begin(), seg.end());
        order_.insert(order_.end(), rest.begin() + idx_c + 1, rest.end());
        for (int p = 0; p < n_; ++p) pos_[order_[p]] = p;
    }

    void add_gain(std::int64_t g) { cost_ -= g; }

    Tour take() {
        Tour t;
        t.order = std::move(order_);
        t.cost = cost_;
        return t;
    }

private:
    std::vector<int> order_;
    std::vector<int> pos_;
    std::int64_t cost_;
    int n_;
};

} // namespace

Tour two_opt(const CostEvaluator& dist, const Tour& t, const CandidateLists& cl) {
    const int n = dist.n();
    if (n < 4) return t;

    TourBuffer buf(t);
    std::vector<bool> active(n + 1, true);
    bool any_active = true;

    auto try_vertex = [&](int a) -> bool {
        for (int direction = 0; direction < 2; ++direction) {
            const int b = direction == 0 ? buf.succ(a) : buf.pred(a);
            const std::int64_t d_ab = dist(a, b);
            for (int c : cl.lists[a]) {
                if (c == b) continue;
                const std::int64_t d_ac = dist(a, c);
                if (d_ac >= d_ab) break; // ascending list: no further gain of this form
                const int e = direction == 0 ? buf.succ(c) : buf.pred(c);
                if (e == a) continue;
                const std::int64_t gain = d_ab + dist(c, e) - d_ac - dist(b, e);
                if (gain > 0) {
                    if (direction == 0)
                        buf.reverse_arc(buf.position(b), buf.position(c));
                    else
                        buf.reverse_arc(buf.position(c), buf.position(b));
                    buf.add_gain(gain);
                    active[a] = active[b] = active[c] = active[e] = true;
                    return true;
                }
            }
        }
        return false;
    };

    while (any_active) {
        any_active = false;
        for (int a = 1; a <= n; ++a) {
            if (!active[a]) continue;
            if (try_vertex(a))
                any_active = true;
            else
                active[a] = false;
        }
    }
    return buf.take();
}

Tour or_opt(const CostEvaluator& dist, const Tour& t, const CandidateLists& cl) {
    const int n = dist.n();
    if (n < 4) return t;

    TourBuffer buf(t);
    std::vector<bool> active(n + 1, true);
    std::vector<bool> in_segment(n + 1, false);
    std::vector<int> seg;

    auto try_segment = [&](int v, int len) -> bool {
        seg.clear();
        int w = v;
        for (int s = 0; s < len; ++s) {
            seg.push_back(w);
            in_segment[w] = true;
            w = buf.succ(w);
        }
        const int last = seg.back();
        const int before = buf.pred(v);
        const int after = buf.succ(last);
        bool applied = false;

        if (!in_segment[before] && !in_segment[after]) {
            const std::int64_t removal =
                dist(before, v) + dist(last, after) - dist(before, after);
            if (removal > 0) {
                for (int source = 0; source < 2 && !applied; ++source) {
                    for (int c : cl.lists[source == 0 ? v : last]) {
                        if (in_segment[c] || c == before) continue;
                        const int cn = buf.succ(c);
                        if (in_segment[cn]) continue;
                        const std::int64_t d_ccn = dist(c, cn);
                        const std::int64_t fwd =
                            removal - (dist(c, v) + dist(last, cn) - d_ccn);
                        const std::int64_t rev =
                            removal - (dist(c, last) + dist(v, cn) - d_ccn);
                        if (fwd <= 0 && rev <= 0) continue;
                        if (rev > fwd) std::reverse(seg.begin(), seg.end());
                        buf.relocate(buf.position(v), len, seg, c);
                        buf.add_gain(std::max(fwd, rev));
                        active[before] = active[after] = active[c] = active[cn] = true;
                        for (int s : seg) active[s] = true;
                        applied = true;
                        break;
                    }
                }
            }
        }
        for (int s : seg) in_segment[s] = false;
        return applied;
    };

    bool any_active = true;
    while (any_active) {
        any_active = false;
        for (int v = 1; v <= n; ++v) {
            if (!active[v]) continue;
            bool improved = false;
            for (int len = 1; len <= 3 && len + 2 <= n; ++len)
                if (try_segment(v, len)) {
                    improved = true;
                    break;
                }
            if (improved)
                any_active = true;
            else
                active[v] = false;
        }
    }
    return buf.take();
}

} // namespace ctsp
