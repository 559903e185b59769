#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "landscape/testbed/statevector.hpp"

namespace landscape::testbed {

struct PauliTerm {
    double coefficient;
    /// One of I, X, Y, Z per qubit; character k acts on qubit k.
    std::string ops;
};

/// Real-weighted sum of Pauli strings on a fixed number of qubits.
class PauliSum {
public:
    PauliSum(std::size_t n_qubits, std::vector<PauliTerm> terms);

    /// Lines of "<coefficient> <pauli string>".
    static PauliSum parse(const std::string& text);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    const std::vector<PauliTerm>& terms() const noexcept { return terms_; }

    /// <psi|P_k|psi> for every term, in term order.
    std::vector<double> term_expectations(const Statevector& state) const;
    double expectation(const Statevector& state) const;

private:
    std::size_t n_qubits_;
    std::vector<PauliTerm> terms_;
};

/// Probability vector over the 2^n basis outcomes (index bit k = qubit k).
class DiscreteDistribution {
public:
    explicit DiscreteDistribution(std::vector<double> probabilities);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    std::size_t size() const noexcept { return p_.size(); }
    const std::vector<double>& probabilities() const noexcept { return p_; }
    double operator[](std::size_t i) const { return p_[i]; }

    static DiscreteDistribution point_mass(std::size_t n_qubits, std::size_t outcome);
    /// Normalized i.i.d. uniform weights; deterministic per seed.
    static DiscreteDistribution random(std::size_t n_qubits, std::uint64_t seed);

private:
    std::size_t n_qubits_;
    std::vector<double> p_;
};

/// Outcome index for a bitstring whose character k is qubit k.
std::size_t parse_bitstring(const std::string& bits);
std::string format_bitstring(std::size_t index, std::size_t n_qubits);

/// One "bitstring probability" line per outcome; unlisted outcomes are 0.
DiscreteDistribution parse_distribution(const std::string& text);
DiscreteDistribution read_distribution(const std::filesystem::path& path);

/// |<x|psi>|^2 for every basis outcome x.
DiscreteDistribution born_distribution(const Statevector& state);

} // namespace landscape::testbed
