// Command-line front end: instance generation, transformation, solving,
// validation, brute-force oracles, IP model export, benchmarking and
// performance profiles.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ctsp/bench.hpp"
#include "ctsp/exact.hpp"
#include "ctsp/ga_eax.hpp"
#include "ctsp/local_search.hpp"
#include "ctsp/rng.hpp"
#include "ctsp/transform.hpp"

namespace {

using nlohmann::json;
using namespace ctsp;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitResource = 3;

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
}

struct GaOptions {
    GaConfig cfg;
    std::string strategy = "single";
    int kmult = 2;

    void attach(CLI::App* cmd) {
        cmd->add_option("--pop", cfg.population_size, "population size p")
            ->capture_default_str();
        cmd->add_option("--offspring", cfg.offspring_per_pair,
                        "offspring per parent pair r")
            ->capture_default_str();
        cmd->add_option("--strategy", strategy, "E-set strategy")
            ->check(CLI::IsMember({"single", "kmultiple"}))
            ->capture_default_str();
        cmd->add_option("--kmult", kmult, "cycles per E-set for kmultiple")
            ->capture_default_str();
        cmd->add_option("--epsilon", cfg.termination_epsilon,
                        "stop when avg - best drops below this")
            ->capture_default_str();
        cmd->add_option("--max-generations", cfg.max_generations, "generation cap")
            ->capture_default_str();
        cmd->add_option("--candidate-k", cfg.candidate_k, "neighbor list size")
            ->capture_default_str();
        cmd->add_option("--time-limit", cfg.time_limit_seconds,
                        "wall-clock limit per run in seconds (0 = none)")
            ->capture_default_str();
    }

    GaConfig resolved() const {
        GaConfig out = cfg;
        out.strategy = strategy == "single" ? ESetStrategy::single()
                                            : ESetStrategy::k_multiple(kmult);
        return out;
    }
};

int cmd_gen(const GeneratorConfig& cfg, const std::string& out_path) {
    const Instance inst = generate_clustered(cfg);
    if (out_path.empty())
        std::cout << write_instance(inst);
    else
        write_text_file(out_path, write_instance(inst));
    std::cerr << "generated " << inst.name << " (n=" << inst.n << ", m=" << inst.m
              << ")\n";
    return kExitOk;
}

int cmd_transform(const std::string& in_path, const std::string& out_path) {
    const TspInstance tsp = to_tsp(parse_instance_file(in_path));
    std::ostringstream text;
    write_transformed(tsp, text);
    if (out_path.empty())
        std::cout << text.str();
    else
        write_text_file(out_path, text.str());
    std::cerr << "transformed " << tsp.source->name << ": M=" << tsp.big_m
              << ", m=" << tsp.m() << "\n";
    return kExitOk;
}

int cmd_validate(const std::string& inst_path, const std::string& tour_path) {
    const Instance inst = parse_instance_file(inst_path);
    const Tour tour = read_tour_file(tour_path);
    if (!is_permutation_1n(tour.order, inst.n)) {
        std::cerr << "INVALID: tour is not a permutation of 1.." << inst.n << "\n";
        return kExitInfeasible;
    }
    const std::int64_t actual = tour_cost(inst, tour);
    if (actual != tour.cost) {
        std::cerr << "INVALID: declared cost " << tour.cost << " but edges sum to "
                  << actual << "\n";
        return kExitInfeasible;
    }
    if (!is_cluster_contiguous(inst, tour)) {
        std::cerr << "INVALID: clusters are not visited contiguously ("
                  << inter_cluster_edge_count(inst, tour)
                  << " inter-cluster edges, m=" << inst.m << ")\n";
        return kExitInfeasible;
    }
    std::cout << "VALID cost=" << tour.cost
              << " inter_cluster_edges=" << inter_cluster_edge_count(inst, tour)
              << "\n";
    return kExitOk;
}

int cmd_exact(const std::string& in_path, bool via_tsp, const std::string& out_path) {
    const Instance inst = parse_instance_file(in_path);
    Tour best;
    if (via_tsp) {
        const TspInstance tsp = to_tsp(inst);
        const Tour transformed = brute_force_tsp(tsp.cost);
        const LiftResult lifted = lift_tour(transformed, inst);
        if (!lifted.feasible) {
            std::cerr << "INVALID: optimal transformed tour is not cluster-feasible\n";
            return kExitInfeasible;
        }
        best = lifted.tour;
        std::cout << "optimum " << best.cost << " (via big-M transformation, M="
                  << tsp.big_m << ")\n";
    } else {
        best = brute_force_ctsp(inst);
        std::cout << "optimum " << best.cost << " (direct enumeration)\n";
    }
    if (!out_path.empty()) write_text_file(out_path, write_tour(best));
    return kExitOk;
}

int cmd_export_model(const std::string& in_path, const std::string& formulation,
                     const std::string& out_path) {
    const Instance inst = parse_instance_file(in_path);
    const std::string lp =
        formulation == "mtz" ? export_mtz_model(inst) : export_mcf_model(inst);
    if (out_path.empty())
        std::cout << lp;
    else
        write_text_file(out_path, lp);
    return kExitOk;
}

int cmd_solve(const std::string& in_path, const std::string& algo,
              const GaOptions& ga, std::uint64_t seed, int runs, int ls_k,
              const std::string& out_path, const std::string& log_path) {
    const auto source = std::make_shared<const Instance>(parse_instance_file(in_path));
    const TspInstance tsp = to_tsp(source);
    std::cerr << source->name << ": n=" << source->n << " m=" << source->m
              << " M=" << tsp.big_m << "\n";

    std::ofstream log;
    if (!log_path.empty()) {
        log.open(log_path);
        if (!log) throw Error("cannot write log file: " + log_path);
    }

    std::optional<Tour> best;
    bool any_infeasible = false;
    for (int run = 0; run < runs; ++run) {
        const std::uint64_t run_seed = seed + static_cast<std::uint64_t>(run);
        Tour transformed;
        double elapsed = 0.0;
        int generations = 0;
        if (algo == "eax") {
            GaConfig cfg = ga.resolved();
            cfg.seed = run_seed;
            SolveResult result = ga_solve(tsp.cost, cfg);
            transformed = std::move(result.best_tour);
            elapsed = result.wall_seconds;
            generations = result.generations;
            if (log) {
                // best/average are the transformed (penalized) objective the
                // solver actually optimizes
                for (std::size_t g = 0; g < result.history.size(); ++g) {
                    const auto& h = result.history[g];
                    json rec{{"run", run},
                             {"seed", run_seed},
                             {"generation", g},
                             {"best", h.best},
                             {"average", h.average},
                             {"elapsed_seconds", h.elapsed_seconds}};
                    log << rec.dump() << "\n";
                }
            }
        } else {
            const auto t0 = std::chrono::steady_clock::now();
            std::mt19937_64 rng(run_seed);
            const CandidateLists cl =
                build_candidate_lists(tsp.cost, std::min(ls_k, tsp.n() - 1));
            const int start = 1 + static_cast<int>(uniform_below(rng, tsp.n()));
            Tour t = nearest_neighbor_tour(tsp.cost, start, rng, &cl);
            t = two_opt(tsp.cost, t, cl);
            transformed = or_opt(tsp.cost, t, cl);
            elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
        }

        const LiftResult lifted = lift_tour(transformed, *source);
        std::cout << "run " << run << ": seed=" << run_seed
                  << " cost=" << lifted.tour.cost
                  << " feasible=" << (lifted.feasible ? "yes" : "NO");
        if (algo == "eax") std::cout << " generations=" << generations;
        std::cout << " time=" << elapsed << "s\n";
        if (!lifted.feasible) {
            any_infeasible = true;
            continue;
        }
        if (!best || lifted.tour.cost < best->cost) best = lifted.tour;
    }

    if (!best) {
        std::cerr << "no feasible tour produced\n";
        return kExitInfeasible;
    }
    std::cout << "best cost " << best->cost << "\n";
    if (!out_path.empty()) write_text_file(out_path, write_tour(*best));
    return any_infeasible ? kExitInfeasible : kExitOk;
}

struct ManifestEntry {
    std::string path;
    std::optional<std::int64_t> reference;
};

std::vector<ManifestEntry> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open manifest: " + path);
    json doc = json::parse(in);
    const json items = doc.is_array() ? doc : doc.at("instances");
    std::vector<ManifestEntry> out;
    for (const auto& item : items) {
        ManifestEntry entry;
        if (item.is_string()) {
            entry.path = item.get<std::string>();
        } else {
            entry.path = item.at("path").get<std::string>();
            if (item.contains("reference") && !item.at("reference").is_null())
                entry.reference = item.at("reference").get<std::int64_t>();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

json archive_json(const std::vector<RunStats>& all) {
    json results = json::array();
    for (const auto& s : all) {
        json runs = json::array();
        for (const auto& r : s.runs)
            runs.push_back({{"cost", r.cost}, {"seconds", r.seconds}});
        json rec{{"instance", s.instance},
                 {"algorithm", s.algorithm},
                 {"runs", runs},
                 {"gap_best", s.gap_best},
                 {"gap_avg", s.gap_avg},
                 {"hits", s.hits}};
        rec["reference"] = s.reference ? json(*s.reference) : json(nullptr);
        results.push_back(std::move(rec));
    }
    return json{{"results", results}};
}

int cmd_bench(const std::string& manifest_path, std::vector<std::string> algos,
              int runs, std::uint64_t seed, int parallel, const GaOptions& ga,
              int ls_k, const std::string& prefix) {
    if (algos.empty()) algos = {"eax"};
    const auto manifest = read_manifest(manifest_path);
    if (manifest.empty()) throw Error("manifest lists no instances");

    std::vector<RunStats> all;
    for (const auto& entry : manifest) {
        const Instance inst = parse_instance_file(entry.path);
        for (const auto& name : algos) {
            AlgoSpec spec;
            spec.name = name;
            spec.kind = name == "ls" ? AlgoKind::LocalSearch : AlgoKind::GaEax;
            spec.ga = ga.resolved();
            spec.ls_candidate_k = ls_k;
            std::cerr << "running " << name << " on " << inst.name << " (" << runs
                      << " runs)\n";
            RunStats stats = run_trials(inst, spec, runs, seed, parallel);
            stats.reference = entry.reference;
            all.push_back(std::move(stats));
        }
    }

    // Without a published optimum, gaps are measured against the best cost
    // seen across all runs and algorithms in this session.
    std::map<std::string, std::int64_t> session_best;
    for (const auto& s : all) {
        const auto it = session_best.find(s.instance);
        if (it == session_best.end())
            session_best[s.instance] = s.best_cost();
        else
            it->second = std::min(it->second, s.best_cost());
    }
    for (auto& s : all) {
        if (!s.reference) s.reference = session_best[s.instance];
        finalize(s);
    }

    const std::string text = render_table_text(all);
    std::cout << text;
    write_text_file(prefix + ".txt", text);
    write_text_file(prefix + ".csv", render_table_csv(all));
    write_text_file(prefix + ".json", archive_json(all).dump(2) + "\n");
    std::cerr << "wrote " << prefix << ".txt, " << prefix << ".csv, " << prefix
              << ".json\n";
    return kExitOk;
}

int cmd_profile(const std::vector<std::string>& archives, const std::string& metric,
                const std::string& out_path) {
    std::map<std::string, std::map<std::string, double>> cells;
    std::set<std::string> algorithms, instances;
    for (const auto& path : archives) {
        std::ifstream in(path);
        if (!in) throw Error("cannot open archive: " + path);
        const json doc = json::parse(in);
        for (const auto& rec : doc.at("results")) {
            const auto algo = rec.at("algorithm").get<std::string>();
            const auto inst = rec.at("instance").get<std::string>();
            double cost_sum = 0.0, sec_sum = 0.0;
            int count = 0;
            for (const auto& run : rec.at("runs")) {
                cost_sum += run.at("cost").get<double>();
                sec_sum += run.at("seconds").get<double>();
                ++count;
            }
            if (count == 0) continue;
            double value;
            if (metric == "time") {
                value = std::max(sec_sum / count, 1e-9);
            } else if (metric == "gap") {
                // gap-normalized average, floored to keep the metric positive
                if (rec.at("reference").is_null())
                    throw Error("gap metric needs references in the archive");
                const double ref = rec.at("reference").get<double>();
                value = std::max(100.0 * (cost_sum / count - ref) / ref, 1e-4);
            } else { // avg-cost
                value = cost_sum / count;
            }
            cells[algo][inst] = value;
            algorithms.insert(algo);
            instances.insert(inst);
        }
    }
    if (algorithms.empty()) throw Error("archives contain no results");

    std::vector<std::string> algo_list(algorithms.begin(), algorithms.end());
    std::vector<std::string> inst_list(instances.begin(), instances.end());
    std::vector<std::vector<double>> metric_matrix(
        algo_list.size(), std::vector<double>(inst_list.size()));
    for (std::size_t s = 0; s < algo_list.size(); ++s)
        for (std::size_t p = 0; p < inst_list.size(); ++p) {
            const auto& per_algo = cells[algo_list[s]];
            const auto it = per_algo.find(inst_list[p]);
            if (it == per_algo.end())
                throw Error("archives lack " + algo_list[s] + " on " + inst_list[p]);
            metric_matrix[s][p] = it->second;
        }

    const PerfProfile profile =
        performance_profile(algo_list, inst_list, metric_matrix);
    const std::string data = emit_profile_plot_data(profile);
    if (out_path.empty())
        std::cout << data;
    else
        write_text_file(out_path, data);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clustered TSP solver toolkit (big-M transformation + GA-EAX)"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate a synthetic clustered instance");
    GeneratorConfig gen_cfg;
    std::string gen_out;
    gen->add_option("--n", gen_cfg.n, "vertex count")->required();
    gen->add_option("--m", gen_cfg.m, "cluster count")->required();
    gen->add_option("--spread", gen_cfg.cluster_spread, "cluster spread")
        ->capture_default_str();
    gen->add_option("--field", gen_cfg.field_size, "field side length")
        ->capture_default_str();
    gen->add_option("--seed", gen_cfg.seed, "RNG seed")->capture_default_str();
    gen->add_option("-o,--output", gen_out, "output file (default stdout)");

    auto* transform = app.add_subcommand(
        "transform", "write the big-M TSP form of an instance (n <= 3000)");
    std::string tr_in, tr_out;
    transform->add_option("instance", tr_in, "instance file")->required();
    transform->add_option("-o,--output", tr_out, "output file (default stdout)");

    auto* validate_cmd =
        app.add_subcommand("validate", "check a tour file against an instance");
    std::string va_inst, va_tour;
    validate_cmd->add_option("instance", va_inst, "instance file")->required();
    validate_cmd->add_option("tour", va_tour, "tour file")->required();

    auto* exact = app.add_subcommand("exact", "brute-force optimum (tiny instances)");
    std::string ex_in, ex_out;
    bool ex_via_tsp = false;
    exact->add_option("instance", ex_in, "instance file")->required();
    exact->add_flag("--via-tsp", ex_via_tsp,
                    "solve the transformed TSP instead of direct enumeration");
    exact->add_option("-o,--output", ex_out, "write the optimal tour here");

    auto* expm = app.add_subcommand("export-model", "write an LP-format IP model");
    std::string em_in, em_out, em_form = "mtz";
    expm->add_option("instance", em_in, "instance file")->required();
    expm->add_option("--formulation", em_form, "mtz or mcf")
        ->check(CLI::IsMember({"mtz", "mcf"}))
        ->capture_default_str();
    expm->add_option("-o,--output", em_out, "output file (default stdout)");

    auto* solve = app.add_subcommand("solve", "heuristic solve via transformation");
    std::string so_in, so_algo = "eax", so_out, so_log;
    std::uint64_t so_seed = 0;
    int so_runs = 1, so_ls_k = 10;
    GaOptions so_ga;
    solve->add_option("instance", so_in, "instance file")->required();
    solve->add_option("--algo", so_algo, "eax or ls")
        ->check(CLI::IsMember({"eax", "ls"}))
        ->capture_default_str();
    solve->add_option("--seed", so_seed, "base RNG seed")->capture_default_str();
    solve->add_option("--runs", so_runs, "independent runs (seeds seed..seed+R-1)")
        ->capture_default_str();
    solve->add_option("--ls-candidate-k", so_ls_k, "neighbor list size for ls")
        ->capture_default_str();
    solve->add_option("-o,--output", so_out, "write the best tour here");
    solve->add_option("--log", so_log, "JSON-lines per-generation run log");
    so_ga.attach(solve);

    auto* bench = app.add_subcommand("bench", "run a benchmark manifest");
    std::string be_manifest, be_prefix = "results";
    std::vector<std::string> be_algos;
    int be_runs = 10, be_parallel = 0, be_ls_k = 10;
    std::uint64_t be_seed = 1;
    GaOptions be_ga;
    bench->add_option("--manifest", be_manifest, "JSON manifest of instances")
        ->required();
    bench->add_option("--algo", be_algos, "algorithms to run (eax, ls)")
        ->check(CLI::IsMember({"eax", "ls"}));
    bench->add_option("--runs", be_runs, "runs per instance")->capture_default_str();
    bench->add_option("--seed", be_seed, "base seed")->capture_default_str();
    bench->add_option("--parallel", be_parallel, "concurrent runs (0 = hardware)")
        ->capture_default_str();
    bench->add_option("--ls-candidate-k", be_ls_k, "neighbor list size for ls")
        ->capture_default_str();
    bench->add_option("--out-prefix", be_prefix, "output file prefix")
        ->capture_default_str();
    be_ga.attach(bench);

    auto* profile = app.add_subcommand("profile", "performance profile from archives");
    std::vector<std::string> pr_archives;
    std::string pr_metric = "avg-cost", pr_out;
    profile->add_option("archives", pr_archives, "results archives (JSON)")
        ->required();
    profile->add_option("--metric", pr_metric, "avg-cost, gap or time")
        ->check(CLI::IsMember({"avg-cost", "gap", "time"}))
        ->capture_default_str();
    profile->add_option("-o,--output", pr_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_cfg, gen_out);
        if (transform->parsed()) return cmd_transform(tr_in, tr_out);
        if (validate_cmd->parsed()) return cmd_validate(va_inst, va_tour);
        if (exact->parsed()) return cmd_exact(ex_in, ex_via_tsp, ex_out);
        if (expm->parsed()) return cmd_export_model(em_in, em_form, em_out);
        if (solve->parsed())
            return cmd_solve(so_in, so_algo, so_ga, so_seed, so_runs, so_ls_k, so_out,
                             so_log);
        if (bench->parsed())
            return cmd_bench(be_manifest, be_algos, be_runs, be_seed, be_parallel,
                             be_ga, be_ls_k, be_prefix);
        if (profile->parsed()) return cmd_profile(pr_archives, pr_metric, pr_out);
    } catch (const TooLarge& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const Overflow& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
    return kExitUsage;
}
