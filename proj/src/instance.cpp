#include "ctsp/instance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

namespace ctsp {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Splits "KEY : value" / "KEY: value" / bare section keywords.
bool split_header(const std::string& line, std::string& key, std::string& value) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
        key = trim(line);
        value.clear();
    } else {
        key = trim(line.substr(0, colon));
        value = trim(line.substr(colon + 1));
    }
    return !key.empty();
}

std::int64_t euc2d(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::llround(std::sqrt(dx * dx + dy * dy));
}

// Upper bound on any pairwise distance, used for overflow headroom checks.
std::int64_t distance_upper_bound(const Instance& inst) {
    if (inst.kind == DistanceKind::ExplicitMatrix) {
        std::int64_t best = 0;
        for (int i = 1; i <= inst.n; ++i)
            for (int j = i + 1; j <= inst.n; ++j)
                best = std::max(best, inst.weight_at(i, j));
        return best;
    }
    double lox = std::numeric_limits<double>::max(), loy = lox;
    double hix = std::numeric_limits<double>::lowest(), hiy = hix;
    for (int v = 1; v <= inst.n; ++v) {
        lox = std::min(lox, inst.coords[v].x);
        loy = std::min(loy, inst.coords[v].y);
        hix = std::max(hix, inst.coords[v].x);
        hiy = std::max(hiy, inst.coords[v].y);
    }
    if (inst.n == 0) return 0;
    const double diag = std::hypot(hix - lox, hiy - loy);
    if (!(diag < 9.0e18)) throw Overflow("coordinate span too large for 64-bit costs");
    return std::llround(diag) + 1;
}

int parse_header_int(const std::string& value, const char* key) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size()) throw ParseError("");
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string(key) + " is not an integer: " + value);
    }
}

std::vector<std::int64_t> read_numbers(std::istream& in, std::size_t count,
                                       const char* what) {
    std::vector<std::int64_t> out;
    out.reserve(count);
    while (out.size() < count) {
        std::int64_t v;
        if (!(in >> v)) throw ParseError(std::string("truncated ") + what);
        out.push_back(v);
    }
    return out;
}

} // namespace

std::int64_t distance(const Instance& inst, int i, int j) {
    if (i == j) throw SelfLoop("distance(i, i) is undefined");
    if (i < 1 || i > inst.n || j < 1 || j > inst.n)
        throw Error("vertex id out of range");
    if (inst.kind == DistanceKind::ExplicitMatrix) return inst.weight_at(i, j);
    return euc2d(inst.coords[i], inst.coords[j]);
}

std::int64_t max_distance(const Instance& inst) {
    if (inst.n < 2) return 0;
    if (inst.kind == DistanceKind::ExplicitMatrix) {
        std::int64_t best = 0;
        for (int i = 1; i <= inst.n; ++i)
            for (int j = i + 1; j <= inst.n; ++j)
                best = std::max(best, inst.weight_at(i, j));
        return best;
    }
    // The rounded distance is monotone in the true distance, so the maximum
    // rounded distance is the rounding of the largest squared separation.
    double best_sq = 0.0;
    for (int i = 1; i <= inst.n; ++i) {
        for (int j = i + 1; j <= inst.n; ++j) {
            const double dx = inst.coords[i].x - inst.coords[j].x;
            const double dy = inst.coords[i].y - inst.coords[j].y;
            best_sq = std::max(best_sq, dx * dx + dy * dy);
        }
    }
    return std::llround(std::sqrt(best_sq));
}

void validate(const Instance& inst) {
    if (inst.n < 1) throw ParseError("instance has no vertices");
    if (inst.m < 1 || inst.m > inst.n)
        throw PartitionError("cluster count must satisfy 1 <= m <= n");
    if (static_cast<int>(inst.clusters.size()) != inst.m)
        throw PartitionError("cluster list does not match m");

    std::vector<int> seen(inst.n + 1, 0);
    for (const auto& cluster : inst.clusters) {
        if (cluster.empty()) throw PartitionError("empty cluster");
        for (int v : cluster) {
            if (v < 1 || v > inst.n) throw PartitionError("cluster references unknown vertex");
            if (++seen[v] > 1) throw PartitionError("vertex listed in two clusters");
        }
    }
    for (int v = 1; v <= inst.n; ++v)
        if (seen[v] == 0) throw PartitionError("vertex missing from every cluster");

    if (static_cast<int>(inst.cluster_of.size()) != inst.n + 1)
        throw PartitionError("cluster_of index out of sync");
    for (int k = 0; k < inst.m; ++k)
        for (int v : inst.clusters[k])
            if (inst.cluster_of[v] != k + 1)
                throw PartitionError("cluster_of index out of sync");

    if (inst.kind == DistanceKind::Euc2dRounded) {
        if (static_cast<int>(inst.coords.size()) != inst.n + 1)
            throw DimensionMismatch("coordinate count disagrees with DIMENSION");
    } else {
        const auto expect =
            static_cast<std::size_t>(inst.n + 1) * static_cast<std::size_t>(inst.n + 1);
        if (inst.weights.size() != expect)
            throw DimensionMismatch("weight matrix size disagrees with DIMENSION");
        for (int i = 1; i <= inst.n; ++i) {
            for (int j = i + 1; j <= inst.n; ++j) {
                if (inst.weight_at(i, j) != inst.weight_at(j, i))
                    throw ParseError("asymmetric distance matrix");
                if (inst.weight_at(i, j) < 0) throw ParseError("negative distance");
            }
        }
    }

    // Overflow headroom: n * c_max (and later n * M) must stay in 64 bits.
    const auto bound = static_cast<__int128>(distance_upper_bound(inst));
    const __int128 need = static_cast<__int128>(inst.n) * bound;
    if (need > std::numeric_limits<std::int64_t>::max() / 4)
        throw Overflow("distances too large for big-M headroom");
}

Instance parse_instance(std::istream& text) {
    Instance inst;
    int declared_n = -1;
    int declared_m = -1;
    std::string ewt;     // EDGE_WEIGHT_TYPE
    std::string ewf;     // EDGE_WEIGHT_FORMAT
    bool saw_coords = false;
    bool saw_weights = false;
    bool saw_sets = false;
    std::vector<Point> file_coords;        // file order
    std::vector<int> file_ids;             // original ids, file order
    std::vector<std::int64_t> raw_weights;
    std::vector<std::pair<int, std::vector<int>>> raw_sets; // (set id, original vertex ids)

    std::string line;
    while (std::getline(text, line)) {
        line = trim(line);
        if (line.empty()) continue;

        std::string key, value;
        if (!split_header(line, key, value)) continue;

        if (key == "NAME") {
            inst.name = value;
        } else if (key == "TYPE" || key == "COMMENT" || key == "DISPLAY_DATA_TYPE") {
            // informational
        } else if (key == "DIMENSION") {
            declared_n = parse_header_int(value, "DIMENSION");
        } else if (key == "GTSP_SETS") {
            declared_m = parse_header_int(value, "GTSP_SETS");
        } else if (key == "EDGE_WEIGHT_TYPE") {
            ewt = value;
        } else if (key == "EDGE_WEIGHT_FORMAT") {
            ewf = value;
        } else if (key == "DISPLAY_DATA_SECTION") {
            if (declared_n < 1) throw ParseError("DISPLAY_DATA_SECTION before DIMENSION");
            int id;
            double x, y;
            for (int i = 0; i < declared_n; ++i)
                if (!(text >> id >> x >> y))
                    throw ParseError("truncated DISPLAY_DATA_SECTION");
        } else if (key == "NODE_COORD_SECTION") {
            if (declared_n < 1) throw ParseError("NODE_COORD_SECTION before DIMENSION");
            for (int i = 0; i < declared_n; ++i) {
                int id;
                double x, y;
                if (!(text >> id >> x >> y))
                    throw DimensionMismatch("fewer coordinates than DIMENSION");
                file_ids.push_back(id);
                file_coords.push_back({x, y});
            }
            saw_coords = true;
        } else if (key == "EDGE_WEIGHT_SECTION") {
            if (declared_n < 1) throw ParseError("EDGE_WEIGHT_SECTION before DIMENSION");
            const std::size_t n = declared_n;
            std::size_t count = 0;
            if (ewf == "FULL_MATRIX") count = n * n;
            else if (ewf == "UPPER_ROW") count = n * (n - 1) / 2;
            else if (ewf == "LOWER_DIAG_ROW") count = n * (n + 1) / 2;
            else throw UnsupportedEdgeWeightType("unsupported EDGE_WEIGHT_FORMAT: " + ewf);
            raw_weights = read_numbers(text, count, "EDGE_WEIGHT_SECTION");
            saw_weights = true;
        } else if (key == "GTSP_SET_SECTION") {
            if (declared_m < 1) throw MissingSection("GTSP_SET_SECTION before GTSP_SETS");
            for (int k = 0; k < declared_m; ++k) {
                int set_id;
                if (!(text >> set_id)) throw ParseError("truncated GTSP_SET_SECTION");
                std::vector<int> members;
                int v;
                while (text >> v && v != -1) members.push_back(v);
                if (v != -1) throw ParseError("GTSP set not terminated by -1");
                raw_sets.emplace_back(set_id, std::move(members));
            }
            saw_sets = true;
        } else if (key == "EOF") {
            break;
        } else {
            throw ParseError("unrecognized keyword: " + key);
        }
    }

    if (declared_n < 1) throw ParseError("missing DIMENSION");
    if (declared_m < 0 || !saw_sets)
        throw MissingSection("missing GTSP_SETS / GTSP_SET_SECTION");
    if (ewt.empty()) throw ParseError("missing EDGE_WEIGHT_TYPE");

    inst.n = declared_n;
    inst.m = declared_m;

    // id remapping: dense 1..n in file order
    std::map<int, int> remap;
    if (ewt == "EUC_2D") {
        inst.kind = DistanceKind::Euc2dRounded;
        if (!saw_coords) throw MissingSection("missing NODE_COORD_SECTION");
        inst.coords.assign(inst.n + 1, Point{});
        for (int i = 0; i < inst.n; ++i) {
            if (!remap.emplace(file_ids[i], i + 1).second)
                throw ParseError("duplicate vertex id in NODE_COORD_SECTION");
            inst.coords[i + 1] = file_coords[i];
        }
    } else if (ewt == "EXPLICIT") {
        inst.kind = DistanceKind::ExplicitMatrix;
        if (!saw_weights) throw MissingSection("missing EDGE_WEIGHT_SECTION");
        for (int v = 1; v <= inst.n; ++v) remap.emplace(v, v);
        const int n = inst.n;
        inst.weights.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0);
        std::size_t idx = 0;
        if (ewf == "FULL_MATRIX") {
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    inst.weights[static_cast<std::size_t>(i) * (n + 1) + j] = raw_weights[idx++];
            for (int i = 1; i <= n; ++i)
                inst.weights[static_cast<std::size_t>(i) * (n + 1) + i] = 0;
        } else if (ewf == "UPPER_ROW") {
            for (int i = 1; i < n; ++i)
                for (int j = i + 1; j <= n; ++j) {
                    const auto w = raw_weights[idx++];
                    inst.weights[static_cast<std::size_t>(i) * (n + 1) + j] = w;
                    inst.weights[static_cast<std::size_t>(j) * (n + 1) + i] = w;
                }
        } else { // LOWER_DIAG_ROW
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= i; ++j) {
                    const auto w = raw_weights[idx++];
                    if (i == j) continue;
                    inst.weights[static_cast<std::size_t>(i) * (n + 1) + j] = w;
                    inst.weights[static_cast<std::size_t>(j) * (n + 1) + i] = w;
                }
        }
    } else {
        throw UnsupportedEdgeWeightType("unsupported EDGE_WEIGHT_TYPE: " + ewt);
    }

    if (static_cast<int>(raw_sets.size()) != inst.m)
        throw MissingSection("GTSP_SET_SECTION does not list GTSP_SETS sets");
    inst.clusters.reserve(inst.m);
    inst.cluster_of.assign(inst.n + 1, 0);
    for (int k = 0; k < inst.m; ++k) {
        std::vector<int> cluster;
        cluster.reserve(raw_sets[k].second.size());
        for (int orig : raw_sets[k].second) {
            const auto it = remap.find(orig);
            if (it == remap.end())
                throw PartitionError("GTSP set references unknown vertex");
            const int v = it->second;
            if (inst.cluster_of[v] != 0)
                throw PartitionError("vertex listed in two clusters");
            inst.cluster_of[v] = k + 1;
            cluster.push_back(v);
        }
        inst.clusters.push_back(std::move(cluster));
    }
    for (int v = 1; v <= inst.n; ++v)
        if (inst.cluster_of[v] == 0)
            throw PartitionError("vertex missing from every cluster");

    validate(inst);
    return inst;
}

Instance parse_instance(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

Instance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open instance file: " + path);
    return parse_instance(in);
}

namespace {

// Deterministic uniform/Gaussian helpers. The standard distributions are
// implementation-defined, so generated instances would not be reproducible
// across standard libraries with them.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class GaussianSource {
public:
    explicit GaussianSource(std::mt19937_64& rng) : rng_(rng) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01(rng_);
        const double u2 = uniform01(rng_);
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64& rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace

Instance generate_clustered(const GeneratorConfig& cfg) {
    if (cfg.n < 1 || cfg.m < 1 || cfg.m > cfg.n)
        throw InvalidConfig("generator requires n >= m >= 1");
    if (!(cfg.cluster_spread > 0.0)) throw InvalidConfig("cluster_spread must be positive");
    if (!(cfg.field_size > 0.0)) throw InvalidConfig("field_size must be positive");

    std::mt19937_64 rng(cfg.seed);
    GaussianSource gauss(rng);

    // Centers kept at least 4 spreads apart so the clusters come out sharp;
    // after 100 failed retries the last draw is accepted as-is.
    const double min_sep = 4.0 * cfg.cluster_spread;
    std::vector<Point> centers;
    centers.reserve(cfg.m);
    for (int k = 0; k < cfg.m; ++k) {
        Point c{};
        for (int attempt = 0; attempt < 100; ++attempt) {
            c = {uniform01(rng) * cfg.field_size, uniform01(rng) * cfg.field_size};
            bool ok = true;
            for (const auto& prev : centers)
                if (std::hypot(prev.x - c.x, prev.y - c.y) < min_sep) {
                    ok = false;
                    break;
                }
            if (ok) break;
        }
        centers.push_back(c);
    }

    Instance inst;
    inst.name = "gen-n" + std::to_string(cfg.n) + "-m" + std::to_string(cfg.m) +
                "-s" + std::to_string(cfg.seed);
    inst.n = cfg.n;
    inst.m = cfg.m;
    inst.kind = DistanceKind::Euc2dRounded;
    inst.coords.assign(cfg.n + 1, Point{});
    inst.cluster_of.assign(cfg.n + 1, 0);
    inst.clusters.assign(cfg.m, {});

    const int base = cfg.n / cfg.m;
    const int extra = cfg.n % cfg.m;
    int next_id = 1;
    for (int k = 0; k < cfg.m; ++k) {
        const int size = base + (k < extra ? 1 : 0);
        for (int i = 0; i < size; ++i, ++next_id) {
            inst.coords[next_id] = {centers[k].x + cfg.cluster_spread * gauss.next(),
                                    centers[k].y + cfg.cluster_spread * gauss.next()};
            inst.cluster_of[next_id] = k + 1;
            inst.clusters[k].push_back(next_id);
        }
    }

    validate(inst);
    return inst;
}

void write_instance(const Instance& inst, std::ostream& out) {
    out << "NAME : " << inst.name << "\n";
    out << "TYPE : CTSP\n";
    out << "DIMENSION : " << inst.n << "\n";
    if (inst.kind == DistanceKind::Euc2dRounded) {
        out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
        out << "NODE_COORD_SECTION\n";
        char buf[64];
        for (int v = 1; v <= inst.n; ++v) {
            out << v;
            std::snprintf(buf, sizeof buf, " %.17g", inst.coords[v].x);
            out << buf;
            std::snprintf(buf, sizeof buf, " %.17g", inst.coords[v].y);
            out << buf << "\n";
        }
    } else {
        out << "EDGE_WEIGHT_TYPE : EXPLICIT\n";
        out << "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n";
        out << "EDGE_WEIGHT_SECTION\n";
        for (int i = 1; i <= inst.n; ++i) {
            for (int j = 1; j <= inst.n; ++j)
                out << (j > 1 ? " " : "") << inst.weight_at(i, j);
            out << "\n";
        }
    }
    out << "GTSP_SETS : " << inst.m << "\n";
    out << "GTSP_SET_SECTION\n";
    for (int k = 0; k < inst.m; ++k) {
        out << (k + 1);
        for (int v : inst.clusters[k]) out << " " << v;
        out << " -1\n";
    }
    out << "EOF\n";
}

std::string write_instance(const Instance& inst) {
    std::ostringstream out;
    write_instance(inst, out);
    return out.str();
}

} // namespace ctsp
