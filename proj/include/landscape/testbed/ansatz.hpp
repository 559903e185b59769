#pragma once

#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "landscape/core.hpp"
#include "landscape/testbed/graph.hpp"
#include "landscape/testbed/statevector.hpp"

namespace landscape::testbed {

/// QAOA MaxCut ansatz. Parameters are laid out [gamma_1..gamma_p, beta_1..beta_p].
struct QaoaAnsatz {
    QaoaAnsatz(WeightedGraph graph, std::size_t layers, std::size_t max_qubits = kDefaultMaxQubits);

    WeightedGraph graph;
    std::size_t layers;
    std::size_t max_qubits;
    /// Cost-Hamiltonian eigenvalue of every basis state.
    std::shared_ptr<const std::vector<double>> diagonal;
};

/// Layered RX/RZ rotations with a CZ ring, closed by a final rotation layer.
///
/// Each rotation layer carries 2n parameters: RX angles for qubits 0..n-1,
/// then RZ angles for qubits 0..n-1. Entangling layers apply CZ(i, i+1 mod n)
/// for every i (a single CZ when n == 2).
struct HardwareEfficientAnsatz {
    HardwareEfficientAnsatz(std::size_t n_qubits, std::size_t layers, std::size_t max_qubits = kDefaultMaxQubits);

    std::size_t n_qubits;
    std::size_t layers;
    std::size_t max_qubits;
};

using AnsatzSpec = std::variant<QaoaAnsatz, HardwareEfficientAnsatz>;

std::size_t parameter_count(const AnsatzSpec& ansatz);
std::size_t qubit_count(const AnsatzSpec& ansatz);
/// Per-coordinate period of the prepared state up to global phase.
std::optional<double> declared_period(const AnsatzSpec& ansatz);
Json describe(const AnsatzSpec& ansatz);

Statevector build_state(const AnsatzSpec& ansatz, std::span<const double> params);

/// prod_k exp(-i beta_k H_B) exp(-i gamma_k H_C) |+>^n with H_B = -sum X.
Statevector qaoa_state(const QaoaAnsatz& ansatz, std::span<const double> gammas, std::span<const double> betas);
Statevector qaoa_state(const WeightedGraph& graph, std::size_t layers, std::span<const double> gammas,
                       std::span<const double> betas);

HardwareEfficientAnsatz hardware_efficient_ansatz(std::size_t n_qubits, std::size_t layers);

} // namespace landscape::testbed
