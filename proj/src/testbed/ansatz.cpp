#include "landscape/testbed/ansatz.hpp"

#include <numbers>

namespace landscape::testbed {

QaoaAnsatz::QaoaAnsatz(WeightedGraph g, std::size_t p, std::size_t max_q)
    : graph(std::move(g)), layers(p), max_qubits(max_q) {
    if (layers < 1) throw UsageError("qaoa: layers must be >= 1");
    if (graph.n_vertices() > max_qubits) {
        throw UsageError("qaoa: " + std::to_string(graph.n_vertices()) + " qubits exceeds the limit of " +
                         std::to_string(max_qubits));
    }
    diagonal = std::make_shared<const std::vector<double>>(graph.energy_diagonal());
}

HardwareEfficientAnsatz::HardwareEfficientAnsatz(std::size_t n, std::size_t l, std::size_t max_q)
    : n_qubits(n), layers(l), max_qubits(max_q) {
    if (n_qubits < 2) throw UsageError("hardware-efficient ansatz needs at least 2 qubits");
    if (layers < 1) throw UsageError("hardware-efficient ansatz needs at least 1 layer");
    if (n_qubits > max_qubits) throw UsageError("hardware-efficient ansatz: too many qubits");
}

HardwareEfficientAnsatz hardware_efficient_ansatz(std::size_t n_qubits, std::size_t layers) {
    return HardwareEfficientAnsatz(n_qubits, layers);
}

std::size_t parameter_count(const AnsatzSpec& ansatz) {
    return std::visit(
        [](const auto& a) -> std::size_t {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, QaoaAnsatz>) return 2 * a.layers;
            else return 2 * a.n_qubits * (a.layers + 1);
        },
        ansatz);
}

std::size_t qubit_count(const AnsatzSpec& ansatz) {
    return std::visit(
        [](const auto& a) -> std::size_t {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, QaoaAnsatz>) return a.graph.n_vertices();
            else return a.n_qubits;
        },
        ansatz);
}

std::optional<double> declared_period(const AnsatzSpec& ansatz) {
    return std::visit(
        [](const auto& a) -> std::optional<double> {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, QaoaAnsatz>) {
                if (a.graph.integer_weights()) return 2.0 * std::numbers::pi;
                return std::nullopt;
            } else {
                return 4.0 * std::numbers::pi;
            }
        },
        ansatz);
}

Json describe(const AnsatzSpec& ansatz) {
    return std::visit(
        [](const auto& a) -> Json {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, QaoaAnsatz>) {
                Json edges = Json::array();
                for (const auto& e : a.graph.edges()) edges.push_back({e.u, e.v, e.weight});
                return Json{{"kind", "qaoa"}, {"layers", a.layers}, {"n_vertices", a.graph.n_vertices()},
                            {"edges", edges}};
            } else {
                return Json{{"kind", "hardware_efficient"}, {"n_qubits", a.n_qubits}, {"layers", a.layers}};
            }
        },
        ansatz);
}

Statevector qaoa_state(const QaoaAnsatz& ansatz, std::span<const double> gammas, std::span<const double> betas) {
    if (gammas.size() != ansatz.layers || betas.size() != ansatz.layers) {
        throw UsageError("qaoa_state: expected " + std::to_string(ansatz.layers) + " gammas and betas");
    }
    const std::size_t n = ansatz.graph.n_vertices();
    Statevector state = Statevector::plus_state(n, ansatz.max_qubits);
    for (std::size_t k = 0; k < ansatz.layers; ++k) {
        state.diagonal_phase(*ansatz.diagonal, gammas[k]);
        // exp(-i beta H_B) with H_B = -sum X is RX(-2 beta) on every qubit
        for (std::size_t q = 0; q < n; ++q) state.rx(q, -2.0 * betas[k]);
    }
    return state;
}

Statevector qaoa_state(const WeightedGraph& graph, std::size_t layers, std::span<const double> gammas,
                       std::span<const double> betas) {
    return qaoa_state(QaoaAnsatz(graph, layers), gammas, betas);
}

namespace {

Statevector hardware_efficient_state(const HardwareEfficientAnsatz& a, std::span<const double> params) {
    const std::size_t n = a.n_qubits;
    Statevector state(n, a.max_qubits);
    std::size_t idx = 0;
    auto rotations = [&] {
        for (std::size_t q = 0; q < n; ++q) state.rx(q, params[idx + q]);
        for (std::size_t q = 0; q < n; ++q) state.rz(q, params[idx + n + q]);
        idx += 2 * n;
    };
    for (std::size_t l = 0; l < a.layers; ++l) {
        rotations();
        if (n == 2) {
            state.cz(0, 1);
        } else {
            for (std::size_t q = 0; q < n; ++q) state.cz(q, (q + 1) % n);
        }
    }
    rotations();
    return state;
}

} // namespace

Statevector build_state(const AnsatzSpec& ansatz, std::span<const double> params) {
    if (params.size() != parameter_count(ansatz)) {
        throw UsageError("ansatz expects " + std::to_string(parameter_count(ansatz)) + " parameters, got " +
                         std::to_string(params.size()));
    }
    return std::visit(
        [&](const auto& a) -> Statevector {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, QaoaAnsatz>) {
                return qaoa_state(a, params.subspan(0, a.layers), params.subspan(a.layers, a.layers));
            } else {
                return hardware_efficient_state(a, params);
            }
        },
        ansatz);
}

} // namespace landscape::testbed
