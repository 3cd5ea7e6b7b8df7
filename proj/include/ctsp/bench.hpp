#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctsp/ga_eax.hpp"
#include "ctsp/instance.hpp"

namespace ctsp {

/// 100 * (f - f_ref) / f_ref. Negative gaps are permitted (a new best-known)
/// and reported as such. Throws ZeroReference.
double gap_percent(std::int64_t f, std::int64_t f_ref);

/// The same gap rounded to exactly four decimals with exact integer
/// arithmetic (half away from zero), formatted for table cells.
std::string format_gap(std::int64_t f, std::int64_t f_ref);

struct RunRecord {
    std::int64_t cost = 0;
    double seconds = 0.0;
};

struct RunStats {
    std::string instance;
    std::string algorithm;
    std::vector<RunRecord> runs;
    std::optional<std::int64_t> reference; // optimum or best-known cost

    // cached aggregates, filled by finalize()
    double gap_best = 0.0;
    double gap_avg = 0.0;
    int hits = 0;

    std::int64_t best_cost() const;
    double average_cost() const;
    double average_seconds() const;
};

/// Recomputes the cached aggregates from the raw run list; no-op when the
/// reference is unset.
void finalize(RunStats& stats);

enum class AlgoKind { GaEax, LocalSearch };

struct AlgoSpec {
    std::string name = "ga-eax";
    AlgoKind kind = AlgoKind::GaEax;
    GaConfig ga;             // seed field is overridden per run
    int ls_candidate_k = 10; // LocalSearch baseline
};

/// Runs n_runs independent seeded solves (seeds base_seed, base_seed+1, ...)
/// through the transformation pipeline and collects recovered CTSP costs and
/// wall times. Runs may execute concurrently; results are in run order.
RunStats run_trials(const Instance& inst, const AlgoSpec& algo, int n_runs,
                    std::uint64_t base_seed, int parallelism = 0);

struct ProfilePoint {
    double tau = 1.0;
    double rho = 0.0;
};

struct PerfProfile {
    std::vector<std::string> algorithms;
    std::vector<std::string> instances;
    std::vector<std::vector<double>> metric; // f[s][p], positive
    std::vector<std::vector<double>> ratios; // r[s][p] = f[s][p] / min_a f[a][p]
    double tau_max = 1.0;
    std::vector<std::vector<ProfilePoint>> breakpoints; // per algorithm, sorted

    /// Fraction of instances with ratio <= tau for algorithm s.
    double rho(int s, double tau) const;
};

/// Dolan-More profile over a positive metric matrix (algorithms x
/// instances). Throws NonPositiveMetric.
PerfProfile performance_profile(std::vector<std::string> algorithms,
                                std::vector<std::string> instances,
                                std::vector<std::vector<double>> metric);

/// Aligned text table; the "=(k)" convention marks a best run that matched
/// the reference, with k the number of matching runs.
std::string render_table_text(const std::vector<RunStats>& stats);

/// CSV rendering carrying exactly the same numbers as the text table.
std::string render_table_csv(const std::vector<RunStats>& stats);

/// Per-algorithm (tau, rho) breakpoint series for any plotting tool.
std::string emit_profile_plot_data(const PerfProfile& profile);

} // namespace ctsp
