#include "landscape/testbed/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "landscape/core.hpp"
#include "landscape/random.hpp"

namespace landscape::testbed {

WeightedGraph::WeightedGraph(std::size_t n_vertices, std::vector<Edge> edges) : n_(n_vertices), edges_(std::move(edges)) {
    if (n_ == 0) throw UsageError("graph needs at least one vertex");
    if (n_ > 63) throw UsageError("graph: at most 63 vertices are supported");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto& e : edges_) {
        if (e.u == e.v) throw UsageError("graph: self-loop on vertex " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.v >= n_) throw UsageError("graph: vertex index " + std::to_string(e.v) + " out of range");
        if (!std::isfinite(e.weight)) throw UsageError("graph: non-finite edge weight");
        if (!seen.emplace(e.u, e.v).second) {
            throw UsageError("graph: duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        }
    }
}

std::vector<std::size_t> WeightedGraph::degrees() const {
    std::vector<std::size_t> d(n_, 0);
    for (const auto& e : edges_) {
        ++d[e.u];
        ++d[e.v];
    }
    return d;
}

bool WeightedGraph::integer_weights() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == std::round(e.weight); });
}

double WeightedGraph::cut_energy(std::uint64_t bits) const {
    double s = 0.0;
    for (const auto& e : edges_) {
        bool same = ((bits >> e.u) & 1U) == ((bits >> e.v) & 1U);
        s += same ? e.weight : -e.weight;
    }
    return s;
}

std::vector<double> WeightedGraph::energy_diagonal() const {
    if (n_ > 30) throw UsageError("energy_diagonal: too many vertices");
    std::vector<double> d(std::size_t{1} << n_);
    for (std::size_t x = 0; x < d.size(); ++x) d[x] = cut_energy(x);
    return d;
}

double WeightedGraph::brute_force_minimum() const {
    if (n_ > 30) throw UsageError("brute_force_minimum: too many vertices");
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n_); ++x) best = std::min(best, cut_energy(x));
    return best;
}

WeightMode parse_weight_mode(const std::string& name) {
    if (name == "unit") return WeightMode::unit;
    if (name == "integer" || name == "integer-set") return WeightMode::integer_set;
    if (name == "uniform") return WeightMode::uniform;
    throw UsageError("unknown weight mode '" + name + "' (expected unit, integer-set or uniform)");
}

std::string to_string(WeightMode mode) {
    switch (mode) {
    case WeightMode::unit: return "unit";
    case WeightMode::integer_set: return "integer-set";
    case WeightMode::uniform: return "uniform";
    }
    return "unknown";
}

WeightedGraph random_regular_graph(std::size_t n_vertices, std::size_t degree, WeightMode weights,
                                   std::uint64_t seed) {
    if (degree == 0) throw UsageError("random_regular_graph: degree must be positive");
    if ((n_vertices * degree) % 2 != 0) throw UsageError("random_regular_graph: n * degree must be even");
    if (n_vertices <= degree) throw UsageError("random_regular_graph: need n > degree");

    Rng rng(seed);
    constexpr int kMaxRestarts = 1000;
    std::vector<std::size_t> stubs(n_vertices * degree);
    for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
        for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = i / degree;
        rng.shuffle(stubs.begin(), stubs.end());

        std::set<std::pair<std::size_t, std::size_t>> pairs;
        bool ok = true;
        for (std::size_t i = 0; i < stubs.size(); i += 2) {
            std::size_t u = std::min(stubs[i], stubs[i + 1]);
            std::size_t v = std::max(stubs[i], stubs[i + 1]);
            if (u == v || !pairs.emplace(u, v).second) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        std::vector<Edge> edges;
        edges.reserve(pairs.size());
        static constexpr double kIntegerWeights[] = {-3.0, -2.0, -1.0, 1.0, 2.0, 3.0};
        for (const auto& [u, v] : pairs) {
            double w = 1.0;
            if (weights == WeightMode::integer_set) w = kIntegerWeights[rng.below(6)];
            if (weights == WeightMode::uniform) w = rng.uniform();
            edges.push_back({u, v, w});
        }
        return WeightedGraph(n_vertices, std::move(edges));
    }
    throw NumericalError("random_regular_graph: rejection budget of 1000 restarts exhausted");
}

WeightedGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
        std::istringstream fields(line);
        if (!have_header) {
            std::string tag;
            if (!(fields >> tag >> n) || tag != "n") {
                throw UsageError("graph file line " + std::to_string(line_no) + ": expected 'n <n_vertices>'");
            }
            have_header = true;
            continue;
        }
        Edge e{};
        if (!(fields >> e.u >> e.v >> e.weight)) {
            throw UsageError("graph file line " + std::to_string(line_no) + ": expected 'u v w'");
        }
        edges.push_back(e);
    }
    if (!have_header) throw UsageError("graph file: missing 'n <n_vertices>' header");
    return WeightedGraph(n, std::move(edges));
}

WeightedGraph read_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read graph file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

void write_graph(const WeightedGraph& graph, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file " + path.string());
    out.precision(17);
    out << "n " << graph.n_vertices() << '\n';
    for (const auto& e : graph.edges()) out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
}

} // namespace landscape::testbed
