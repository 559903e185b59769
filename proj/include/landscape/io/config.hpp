#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "landscape/core.hpp"
#include "landscape/io/svg.hpp"
#include "landscape/scans.hpp"

namespace landscape::io {

/// Which loss to build and with what parameters.
struct ModelSpec {
    /// sombrero | constant | quadratic | qaoa | qcbm | pauli. Empty means unset.
    std::string kind;
    std::size_t dim = 4;
    double nu = 2.0;
    /// constant model value
    double value = 0.0;
    /// quadratic model: Hessian diagonal (empty = identity of size dim)
    std::vector<double> diagonal;

    /// qaoa: a graph file, or a random regular graph
    std::string graph_file;
    std::size_t vertices = 8;
    std::size_t degree = 3;
    std::string weights = "unit";
    std::uint64_t graph_seed = 1;
    std::size_t layers = 1;

    /// qcbm / pauli: hardware-efficient ansatz on `qubits` qubits
    std::size_t qubits = 4;
    std::size_t ansatz_layers = 1;
    /// qcbm target file; a random target seeded by graph_seed when empty
    std::string dist_file;
    /// pauli Hamiltonian file; a transverse-field Ising ring when empty
    std::string hamiltonian_file;
    double kl_epsilon = 1e-6;
    /// 0 = exact evaluation
    std::uint64_t shots = 0;
};

struct OperationParams {
    std::size_t res_x = 50;
    std::size_t res_y = 50;
    Interval range_x{-1.0, 1.0};
    Interval range_y{-1.0, 1.0};
    std::size_t points = 100;
    /// scan direction norm for random-direction scans
    double dir_norm = 1.0;
    /// anchor point (empty = origin of parameter space)
    std::vector<double> origin;
    std::vector<double> point_a;
    std::vector<double> point_b;

    /// optimizer
    std::string optimizer = "gd";
    std::size_t starts = 1;
    double init_range = 5.0;
    double learning_rate = 0.05;
    std::size_t iterations = 150;
    double grad_step = 1e-3;
    std::size_t spsa_directions = 3;
    double spsa_eps = 0.1;

    /// Hessian
    std::string hessian = "exact";
    double hessian_step = 1e-3;
    std::size_t repetitions = 100;
    double hessian_eps = 1e-2;

    /// NEB / AutoNEB
    std::size_t pivots = 10;
    double neb_learning_rate = 0.1;
    std::size_t neb_iterations = 100;
    std::size_t cycles = 4;
    double spring = 0.0;
    double insert_rel_tol = 0.2;
    double insert_abs_tol = 0.0;
    std::size_t max_new_pivots = 4;
    std::size_t profile_samples = 20;

    /// PCA scan margin as a fraction of the bounding box
    double margin = 0.25;
    /// evaluate_many worker cap (0 = all cores)
    unsigned threads = 0;
};

struct ExperimentConfig {
    /// scan1d | scan2d | pca-scan | hessian | eigen-ratio-scan | neb | autoneb | optimize | demo
    std::string operation;
    /// demo name when operation == "demo"
    std::string demo;
    ModelSpec model;
    OperationParams params;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::vector<std::string> formats{"json", "csv", "svg"};
    RenderSpec render;

    void validate() const;
    bool wants(const std::string& format) const;
};

Json to_json(const ExperimentConfig& config);
/// Rejects unknown and malformed fields with a UsageError naming the field.
ExperimentConfig config_from_json(const Json& j);

void save_config(const ExperimentConfig& config, const std::filesystem::path& path);
ExperimentConfig load_config(const std::filesystem::path& path);

/// The config as embedded in emitted files: everything except the output directory.
Json provenance_config(const ExperimentConfig& config);

/// "lo:hi"
Interval parse_interval(const std::string& text, const std::string& field);
/// "a,b,c"
std::vector<double> parse_vector(const std::string& text, const std::string& field);
std::vector<std::string> parse_formats(const std::string& text);

} // namespace landscape::io
