#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace landscape::testbed {

struct Edge {
    std::size_t u;
    std::size_t v;
    double weight;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph without self-loops or parallel edges.
/// Edges are stored with u < v.
class WeightedGraph {
public:
    WeightedGraph(std::size_t n_vertices, std::vector<Edge> edges);

    std::size_t n_vertices() const noexcept { return n_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::vector<std::size_t> degrees() const;
    /// True when every weight is an integer (the QAOA cost phase is then 2pi-periodic).
    bool integer_weights() const;

    /// sum_{(u,v)} w_uv z_u z_v for z = (-1)^{bit}.
    double cut_energy(std::uint64_t bits) const;
    /// cut_energy for every basis state.
    std::vector<double> energy_diagonal() const;
    /// Exhaustive minimum over all 2^n assignments.
    double brute_force_minimum() const;

    friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

private:
    std::size_t n_;
    std::vector<Edge> edges_;
};

enum class WeightMode { unit, integer_set, uniform };

WeightMode parse_weight_mode(const std::string& name);
std::string to_string(WeightMode mode);

/// Random regular graph via the pairing (configuration) model, restarting on
/// self-loops or parallel edges. Deterministic per seed.
WeightedGraph random_regular_graph(std::size_t n_vertices, std::size_t degree, WeightMode weights,
                                   std::uint64_t seed);

/// Text format: first line "n <n_vertices>", then one "u v w" line per edge.
WeightedGraph read_graph(const std::filesystem::path& path);
WeightedGraph parse_graph(const std::string& text);
void write_graph(const WeightedGraph& graph, const std::filesystem::path& path);

} // namespace landscape::testbed
