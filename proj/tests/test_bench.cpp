#include <regex>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include "ctsp/bench.hpp"
#include "ctsp/exact.hpp"

using namespace ctsp;

TEST_CASE("gap_percent: basic values and errors") {
    CHECK(gap_percent(100, 100) == 0.0);
    CHECK(gap_percent(101, 100) == doctest::Approx(1.0));
    CHECK(gap_percent(99, 100) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(gap_percent(5, 0), ZeroReference);

    // scale invariance on integer costs
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const std::int64_t ref = 1 + static_cast<std::int64_t>(uniform_below(rng, 100000));
        const std::int64_t f = ref + static_cast<std::int64_t>(uniform_below(rng, 100000));
        const std::int64_t s = 1 + static_cast<std::int64_t>(uniform_below(rng, 50));
        CHECK(gap_percent(f * s, ref * s) == doctest::Approx(gap_percent(f, ref)));
    }
}

TEST_CASE("format_gap: four decimals, exact rational rounding") {
    CHECK(format_gap(100, 100) == "0.0000");
    CHECK(format_gap(101, 100) == "1.0000");
    // back-derived CLKH best on 49-pcb1173: round(61600 * 1.00625) = 61985
    CHECK(61985 == std::llround(61600.0 * 1.00625));
    CHECK(format_gap(61985, 61600) == "0.6250");
    CHECK(format_gap(61600 + 308, 61600) == "0.5000"); // exact half
    CHECK(format_gap(59, 61600) == "-99.9042");
}

TEST_CASE("run_trials: aggregates, determinism, oracle hits") {
    const Instance inst = test::small_random_instance(7, 2, 42);
    AlgoSpec algo;
    algo.ga.population_size = 20;
    algo.ga.offspring_per_pair = 5;

    RunStats one = run_trials(inst, algo, 1, 9);
    CHECK(one.runs.size() == 1);

    RunStats stats = run_trials(inst, algo, 4, 9);
    stats.reference = brute_force_ctsp(inst).cost;
    finalize(stats);
    CHECK(stats.gap_best == doctest::Approx(0.0));
    CHECK(stats.hits == 4); // tiny instance: every seeded run lands on the optimum
    CHECK(stats.gap_best <= stats.gap_avg);

    const RunStats again = run_trials(inst, algo, 4, 9);
    for (int i = 0; i < 4; ++i) CHECK(again.runs[i].cost == stats.runs[i].cost);
    CHECK(one.runs[0].cost == stats.runs[0].cost);
}

TEST_CASE("run_trials: single-cluster instances recover the plain cost") {
    const Instance inst = test::small_random_instance(7, 1, 88);
    AlgoSpec algo;
    algo.ga.population_size = 16;
    algo.ga.offspring_per_pair = 4;
    RunStats stats = run_trials(inst, algo, 2, 3);
    stats.reference = brute_force_ctsp(inst).cost;
    finalize(stats);
    CHECK(stats.hits == 2);
}

TEST_CASE("RunStats: cached aggregates equal recomputation") {
    RunStats stats;
    stats.instance = "x";
    stats.algorithm = "a";
    stats.reference = 100;
    stats.runs = {{100, 1.0}, {110, 2.0}, {105, 3.0}};
    finalize(stats);
    CHECK(stats.best_cost() == 100);
    CHECK(stats.hits == 1);
    CHECK(stats.gap_best == doctest::Approx(gap_percent(100, 100)));
    const double manual =
        (gap_percent(100, 100) + gap_percent(110, 100) + gap_percent(105, 100)) / 3.0;
    CHECK(stats.gap_avg == doctest::Approx(manual));
    CHECK(stats.average_seconds() == doctest::Approx(2.0));

    // adding a run never increases gap_best
    const double before = stats.gap_best;
    stats.runs.push_back({120, 1.0});
    finalize(stats);
    CHECK(stats.gap_best <= before);
}

TEST_CASE("performance_profile: worked 2x2 example") {
    const PerfProfile pp = performance_profile(
        {"s1", "s2"}, {"p1", "p2"}, {{1.0, 2.0}, {2.0, 1.0}});
    CHECK(pp.rho(0, 1.0) == doctest::Approx(0.5));
    CHECK(pp.rho(1, 1.0) == doctest::Approx(0.5));
    CHECK(pp.rho(0, 2.0) == doctest::Approx(1.0));
    CHECK(pp.rho(1, 2.0) == doctest::Approx(1.0));
    CHECK(pp.tau_max == doctest::Approx(2.0));
    for (int s = 0; s < 2; ++s) {
        CHECK(pp.ratios[s][s == 0 ? 0 : 1] == doctest::Approx(1.0));
        CHECK(pp.rho(s, pp.tau_max) == doctest::Approx(1.0));
    }
}

TEST_CASE("performance_profile: single algorithm and degenerate inputs") {
    const PerfProfile pp = performance_profile({"only"}, {"a", "b"}, {{3.0, 7.0}});
    CHECK(pp.rho(0, 1.0) == doctest::Approx(1.0));
    CHECK(pp.tau_max == doctest::Approx(1.0));

    CHECK_THROWS_AS(performance_profile({"s"}, {"p"}, {{0.0}}), NonPositiveMetric);
    CHECK_THROWS_AS(performance_profile({"s"}, {"p"}, {{-1.0}}), NonPositiveMetric);
    CHECK_THROWS_AS(performance_profile({}, {}, {}), NonPositiveMetric);
}

TEST_CASE("performance_profile: a constant-factor clone leaves others alone") {
    const std::vector<std::vector<double>> base{{10.0, 30.0}, {20.0, 15.0}};
    const PerfProfile two = performance_profile({"s1", "s2"}, {"p1", "p2"}, base);
    auto cloned = base;
    cloned.push_back({20.0, 60.0}); // twice s1: never best
    const PerfProfile three =
        performance_profile({"s1", "s2", "clone"}, {"p1", "p2"}, cloned);
    for (int s = 0; s < 2; ++s)
        for (double tau : {1.0, 1.5, 2.0, 3.0})
            CHECK(two.rho(s, tau) == doctest::Approx(three.rho(s, tau)));
}

TEST_CASE("performance_profile: monotone with terminal value 1 on random data") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int ns = 1 + static_cast<int>(uniform_below(rng, 4));
        const int np = 1 + static_cast<int>(uniform_below(rng, 6));
        std::vector<std::vector<double>> metric(ns, std::vector<double>(np));
        std::vector<std::string> algos(ns), insts(np);
        for (int s = 0; s < ns; ++s) {
            algos[s] = "s" + std::to_string(s);
            for (int p = 0; p < np; ++p)
                metric[s][p] = 1.0 + static_cast<double>(uniform_below(rng, 1000));
        }
        for (int p = 0; p < np; ++p) insts[p] = "p" + std::to_string(p);
        const PerfProfile pp = performance_profile(algos, insts, metric);
        for (int s = 0; s < ns; ++s) {
            double prev = -1.0;
            for (const auto& bp : pp.breakpoints[s]) {
                CHECK(bp.tau >= 1.0);
                CHECK(bp.rho >= prev);
                prev = bp.rho;
            }
            CHECK(pp.rho(s, pp.tau_max) == doctest::Approx(1.0));
        }
        for (int p = 0; p < np; ++p) {
            int best = 0;
            for (int s = 0; s < ns; ++s)
                if (pp.ratios[s][p] == 1.0) ++best;
            CHECK(best >= 1);
        }
    }
}

TEST_CASE("render_table: hit convention and empty input") {
    RunStats stats;
    stats.instance = "toy";
    stats.algorithm = "ga-eax";
    stats.reference = 500;
    for (int i = 0; i < 10; ++i) stats.runs.push_back({500, 0.25});
    finalize(stats);

    const std::string text = render_table_text({stats});
    CHECK(text.find("=(10)") != std::string::npos);
    const std::string csv = render_table_csv({stats});
    CHECK(csv.find("=(10)") != std::string::npos);

    const std::string empty_text = render_table_text({});
    CHECK(empty_text.find("Instance") != std::string::npos);
    CHECK(empty_text.find('\n') == empty_text.size() - 1); // header only

    // text and CSV carry identical numbers
    auto numbers = [](const std::string& s) {
        std::vector<std::string> out;
        const std::regex number("[-0-9][0-9.]*");
        for (auto it = std::sregex_iterator(s.begin(), s.end(), number);
             it != std::sregex_iterator(); ++it)
            out.push_back(it->str());
        return out;
    };
    RunStats other;
    other.instance = "toy2";
    other.algorithm = "ls";
    other.reference = 400;
    other.runs = {{404, 0.5}, {410, 0.7}};
    finalize(other);
    const auto a = numbers(render_table_text({stats, other}));
    auto b = numbers(render_table_csv({stats, other}));
    // CSV has no header numbers; text has none either. Compare full lists.
    CHECK(a == b);
}

TEST_CASE("emit_profile_plot_data: breakpoint series") {
    const PerfProfile single = performance_profile({"only"}, {"a", "b"}, {{3.0, 7.0}});
    std::istringstream lines(emit_profile_plot_data(single));
    std::string header;
    std::getline(lines, header);
    CHECK(header == "# algorithm: only");
    double tau, rho;
    int points = 0;
    while (lines >> tau >> rho) ++points;
    CHECK(points == 2); // (1,1) and (tau_max,1)

    const PerfProfile two = performance_profile(
        {"s1", "s2"}, {"p1", "p2"}, {{1.0, 2.0}, {2.0, 1.0}});
    const std::string data = emit_profile_plot_data(two);
    std::istringstream in(data);
    std::string line;
    double prev_tau = 0.0, prev_rho = 0.0;
    int series = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            ++series;
            prev_tau = 0.0;
            prev_rho = 0.0;
            continue;
        }
        std::istringstream ls(line);
        REQUIRE((ls >> tau >> rho));
        CHECK(tau >= prev_tau);
        CHECK(rho >= prev_rho);
        prev_tau = tau;
        prev_rho = rho;
    }
    CHECK(series == 2);
    CHECK(data.find("1 0.5") != std::string::npos);
    CHECK(data.find("2 1") != std::string::npos);
}
