#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace landscape::testbed {

using Complex = std::complex<double>;

/// Default ceiling on simulated qubits; dense state memory grows as 2^n.
inline constexpr std::size_t kDefaultMaxQubits = 16;

/// Dense n-qubit state. Basis index bit k holds qubit k (little-endian).
class Statevector {
public:
    /// |0...0>
    explicit Statevector(std::size_t n_qubits, std::size_t max_qubits = kDefaultMaxQubits);
    /// |+>^n
    static Statevector plus_state(std::size_t n_qubits, std::size_t max_qubits = kDefaultMaxQubits);
    /// Takes ownership of amplitudes; throws unless length is 2^n and norm is 1.
    static Statevector from_amplitudes(std::vector<Complex> amplitudes);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    std::size_t size() const noexcept { return amps_.size(); }
    const std::vector<Complex>& amplitudes() const noexcept { return amps_; }
    Complex operator[](std::size_t i) const { return amps_[i]; }
    double norm() const;

    /// exp(-i angle X / 2)
    void rx(std::size_t qubit, double angle);
    /// exp(-i angle Z / 2)
    void rz(std::size_t qubit, double angle);
    void cnot(std::size_t control, std::size_t target);
    void cz(std::size_t a, std::size_t b);
    /// Multiplies amplitude x by exp(-i angle * diagonal[x]).
    void diagonal_phase(std::span<const double> diagonal, double angle);
    /// Applies a Pauli string (one of I, X, Y, Z per qubit; index = qubit).
    void apply_pauli(const std::string& pauli);

    /// <this|other>
    Complex inner(const Statevector& other) const;

private:
    Statevector() = default;
    void check_qubit(std::size_t q) const;

    std::size_t n_qubits_ = 0;
    std::vector<Complex> amps_;
};

} // namespace landscape::testbed
