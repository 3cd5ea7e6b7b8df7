#include "ctsp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "ctsp/local_search.hpp"
#include "ctsp/rng.hpp"
#include "ctsp/transform.hpp"

namespace ctsp {

double gap_percent(std::int64_t f, std::int64_t f_ref) {
    if (f_ref <= 0) throw ZeroReference("gap reference must be positive");
    return 100.0 * static_cast<double>(f - f_ref) / static_cast<double>(f_ref);
}

std::string format_gap(std::int64_t f, std::int64_t f_ref) {
    if (f_ref <= 0) throw ZeroReference("gap reference must be positive");
    // scaled = round(10^6 * (f - f_ref) / f_ref), half away from zero
    const __int128 num = static_cast<__int128>(f - f_ref) * 1'000'000;
    const __int128 den = f_ref;
    __int128 q = num / den;
    const __int128 rem = num % den;
    if (rem * 2 >= den)
        ++q;
    else if (rem * 2 <= -den)
        --q;
    const bool neg = q < 0;
    if (neg) q = -q;
    const auto whole = static_cast<long long>(q / 10'000);
    const auto frac = static_cast<long long>(q % 10'000);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%lld.%04lld", neg ? "-" : "", whole, frac);
    return buf;
}

std::int64_t RunStats::best_cost() const {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& r : runs) best = std::min(best, r.cost);
    return best;
}

double RunStats::average_cost() const {
    double sum = 0.0;
    for (const auto& r : runs) sum += static_cast<double>(r.cost);
    return runs.empty() ? 0.0 : sum / static_cast<double>(runs.size());
}

double RunStats::average_seconds() const {
    double sum = 0.0;
    for (const auto& r : runs) sum += r.seconds;
    return runs.empty() ? 0.0 : sum / static_cast<double>(runs.size());
}

void finalize(RunStats& stats) {
    if (!stats.reference || stats.runs.empty()) return;
    const std::int64_t ref = *stats.reference;
    stats.gap_best = gap_percent(stats.best_cost(), ref);
    double sum = 0.0;
    int hits = 0;
    for (const auto& r : stats.runs) {
        sum += gap_percent(r.cost, ref);
        if (r.cost == ref) ++hits;
    }
    stats.gap_avg = sum / static_cast<double>(stats.runs.size());
    stats.hits = hits;
}

namespace {

RunRecord solve_once(const TspInstance& tsp, const AlgoSpec& algo, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    Tour transformed;
    if (algo.kind == AlgoKind::GaEax) {
        GaConfig cfg = algo.ga;
        cfg.seed = seed;
        cfg.threads = 1; // run-level parallelism only
        SolveResult result = ga_solve(tsp.cost, cfg);
        transformed = std::move(result.best_tour);
    } else {
        std::mt19937_64 rng(seed);
        const CandidateLists cl = build_candidate_lists(
            tsp.cost, std::min(algo.ls_candidate_k, tsp.n() - 1));
        const int start = 1 + static_cast<int>(uniform_below(rng, tsp.n()));
        Tour t = nearest_neighbor_tour(tsp.cost, start, rng, &cl);
        t = two_opt(tsp.cost, t, cl);
        transformed = or_opt(tsp.cost, t, cl);
    }
    // Lifting re-evaluates under the original distances, which stays correct
    // even for m = 1 where the optimal tour has no inter-cluster edge at all.
    const LiftResult lifted = lift_tour(transformed, *tsp.source);
    if (!lifted.feasible)
        throw Error("solver returned a cluster-infeasible tour on " +
                    tsp.source->name);
    RunRecord rec;
    rec.cost = lifted.tour.cost;
    rec.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

} // namespace

RunStats run_trials(const Instance& inst, const AlgoSpec& algo, int n_runs,
                    std::uint64_t base_seed, int parallelism) {
    if (n_runs < 1) throw InvalidConfig("n_runs must be >= 1");
    const TspInstance tsp = to_tsp(inst);

    RunStats stats;
    stats.instance = inst.name;
    stats.algorithm = algo.name;
    stats.runs.resize(n_runs);

    unsigned workers = parallelism > 0 ? static_cast<unsigned>(parallelism)
                                       : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n_runs));

    if (workers <= 1) {
        for (int i = 0; i < n_runs; ++i)
            stats.runs[i] = solve_once(tsp, algo, base_seed + static_cast<std::uint64_t>(i));
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int i = static_cast<int>(w); i < n_runs;
                     i += static_cast<int>(workers))
                    stats.runs[i] =
                        solve_once(tsp, algo, base_seed + static_cast<std::uint64_t>(i));
            });
        for (auto& th : pool) th.join();
    }

    finalize(stats);
    return stats;
}

PerfProfile performance_profile(std::vector<std::string> algorithms,
                                std::vector<std::string> instances,
                                std::vector<std::vector<double>> metric) {
    const std::size_t ns = algorithms.size();
    const std::size_t np = instances.size();
    if (ns == 0 || np == 0) throw NonPositiveMetric("profile needs at least one cell");
    if (metric.size() != ns) throw NonPositiveMetric("metric row count mismatch");
    for (const auto& row : metric) {
        if (row.size() != np) throw NonPositiveMetric("metric column count mismatch");
        for (double f : row)
            if (!(f > 0.0)) throw NonPositiveMetric("metric values must be positive");
    }

    PerfProfile pp;
    pp.algorithms = std::move(algorithms);
    pp.instances = std::move(instances);
    pp.metric = std::move(metric);
    pp.ratios.assign(ns, std::vector<double>(np, 1.0));
    for (std::size_t p = 0; p < np; ++p) {
        double best = pp.metric[0][p];
        for (std::size_t s = 1; s < ns; ++s) best = std::min(best, pp.metric[s][p]);
        for (std::size_t s = 0; s < ns; ++s) {
            pp.ratios[s][p] = pp.metric[s][p] / best;
            pp.tau_max = std::max(pp.tau_max, pp.ratios[s][p]);
        }
    }

    pp.breakpoints.resize(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        std::vector<double> sorted = pp.ratios[s];
        std::sort(sorted.begin(), sorted.end());
        auto& bps = pp.breakpoints[s];
        for (std::size_t i = 0; i < np; ++i) {
            const double rho = static_cast<double>(i + 1) / static_cast<double>(np);
            if (!bps.empty() && bps.back().tau == sorted[i])
                bps.back().rho = rho;
            else
                bps.push_back({sorted[i], rho});
        }
    }
    return pp;
}

double PerfProfile::rho(int s, double tau) const {
    const auto& bps = breakpoints[s];
    double value = 0.0;
    for (const auto& bp : bps) {
        if (bp.tau <= tau)
            value = bp.rho;
        else
            break;
    }
    return value;
}

namespace {

std::string seconds_cell(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", s);
    return buf;
}

struct TableRow {
    std::string instance, algorithm, reference, best, gap_best, gap_avg, seconds;
};

std::vector<TableRow> build_rows(std::vector<RunStats> stats) {
    std::sort(stats.begin(), stats.end(), [](const RunStats& a, const RunStats& b) {
        return a.instance != b.instance ? a.instance < b.instance
                                        : a.algorithm < b.algorithm;
    });
    std::vector<TableRow> rows;
    rows.reserve(stats.size());
    for (const auto& s : stats) {
        TableRow row;
        row.instance = s.instance;
        row.algorithm = s.algorithm;
        row.best = s.runs.empty() ? "-" : std::to_string(s.best_cost());
        row.seconds = seconds_cell(s.average_seconds());
        if (s.reference) {
            row.reference = std::to_string(*s.reference);
            if (!s.runs.empty() && s.best_cost() == *s.reference)
                row.gap_best = "=(" + std::to_string(s.hits) + ")";
            else if (!s.runs.empty())
                row.gap_best = format_gap(s.best_cost(), *s.reference);
            else
                row.gap_best = "-";
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4f", s.gap_avg);
            row.gap_avg = s.runs.empty() ? "-" : buf;
        } else {
            row.reference = "-";
            row.gap_best = "-";
            row.gap_avg = "-";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::string render_table_text(const std::vector<RunStats>& stats) {
    const char* headers[7] = {"Instance", "Algorithm", "Ref",
                              "Best",     "Gap_best",  "Gap_avg", "t(s)"};
    const auto rows = build_rows(stats);
    std::size_t width[7];
    for (int c = 0; c < 7; ++c) width[c] = std::string(headers[c]).size();
    auto cell = [](const TableRow& r, int c) -> const std::string& {
        switch (c) {
        case 0: return r.instance;
        case 1: return r.algorithm;
        case 2: return r.reference;
        case 3: return r.best;
        case 4: return r.gap_best;
        case 5: return r.gap_avg;
        default: return r.seconds;
        }
    };
    for (const auto& r : rows)
        for (int c = 0; c < 7; ++c) width[c] = std::max(width[c], cell(r, c).size());

    std::ostringstream out;
    auto emit = [&](auto get) {
        for (int c = 0; c < 7; ++c) {
            out << (c ? "  " : "");
            const std::string& text = get(c);
            out << text << std::string(width[c] - text.size(), ' ');
        }
        out << "\n";
    };
    emit([&](int c) { return std::string(headers[c]); });
    for (const auto& r : rows)
        emit([&](int c) { return cell(r, c); });
    return out.str();
}

std::string render_table_csv(const std::vector<RunStats>& stats) {
    std::ostringstream out;
    out << "instance,algorithm,reference,best,gap_best,gap_avg,time_seconds\n";
    for (const auto& r : build_rows(stats))
        out << r.instance << "," << r.algorithm << "," << r.reference << "," << r.best
            << "," << r.gap_best << "," << r.gap_avg << "," << r.seconds << "\n";
    return out.str();
}

std::string emit_profile_plot_data(const PerfProfile& profile) {
    std::ostringstream out;
    char buf[64];
    for (std::size_t s = 0; s < profile.algorithms.size(); ++s) {
        if (s > 0) out << "\n";
        out << "# algorithm: " << profile.algorithms[s] << "\n";
        double last_tau = -1.0;
        auto point = [&](double tau, double rho) {
            std::snprintf(buf, sizeof buf, "%.10g %.10g\n", tau, rho);
            out << buf;
            last_tau = tau;
        };
        point(1.0, profile.rho(static_cast<int>(s), 1.0));
        for (const auto& bp : profile.breakpoints[s])
            if (bp.tau > 1.0) point(bp.tau, bp.rho);
        if (last_tau < profile.tau_max || profile.breakpoints[s].size() < 2)
            point(profile.tau_max, 1.0);
    }
    return out.str();
}

} // namespace ctsp
