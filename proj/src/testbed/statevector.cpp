#include "landscape/testbed/statevector.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "landscape/core.hpp"

namespace landscape::testbed {

namespace {

void check_size(std::size_t n_qubits, std::size_t max_qubits) {
    if (n_qubits == 0) throw UsageError("statevector needs at least one qubit");
    if (n_qubits > max_qubits) {
        throw UsageError("statevector: " + std::to_string(n_qubits) + " qubits exceeds the limit of " +
                         std::to_string(max_qubits) + " (raise max_qubits explicitly for larger runs)");
    }
    if (n_qubits > 30) throw UsageError("statevector: more than 30 qubits is not supported");
}

} // namespace

Statevector::Statevector(std::size_t n_qubits, std::size_t max_qubits) {
    check_size(n_qubits, max_qubits);
    n_qubits_ = n_qubits;
    amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

Statevector Statevector::plus_state(std::size_t n_qubits, std::size_t max_qubits) {
    Statevector s(n_qubits, max_qubits);
    const double a = 1.0 / std::sqrt(static_cast<double>(s.amps_.size()));
    for (auto& c : s.amps_) c = a;
    return s;
}

Statevector Statevector::from_amplitudes(std::vector<Complex> amplitudes) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < amplitudes.size()) ++n;
    if (n == 0 || (std::size_t{1} << n) != amplitudes.size()) {
        throw UsageError("statevector: amplitude count must be a power of two >= 2");
    }
    Statevector s;
    s.n_qubits_ = n;
    s.amps_ = std::move(amplitudes);
    if (std::abs(s.norm() - 1.0) > 1e-10) throw UsageError("statevector: amplitudes are not normalized");
    return s;
}

double Statevector::norm() const {
    double s = 0.0;
    for (const auto& c : amps_) s += std::norm(c);
    return std::sqrt(s);
}

void Statevector::check_qubit(std::size_t q) const {
    if (q >= n_qubits_) throw UsageError("gate target " + std::to_string(q) + " out of range");
}

void Statevector::rx(std::size_t qubit, double angle) {
    check_qubit(qubit);
    const double c = std::cos(0.5 * angle);
    const Complex ms{0.0, -std::sin(0.5 * angle)};
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) continue;
        Complex a0 = amps_[i];
        Complex a1 = amps_[i | bit];
        amps_[i] = c * a0 + ms * a1;
        amps_[i | bit] = ms * a0 + c * a1;
    }
}

void Statevector::rz(std::size_t qubit, double angle) {
    check_qubit(qubit);
    const Complex p0 = std::polar(1.0, -0.5 * angle);
    const Complex p1 = std::polar(1.0, 0.5 * angle);
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] *= (i & bit) ? p1 : p0;
}

void Statevector::cnot(std::size_t control, std::size_t target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw UsageError("cnot: control and target must differ");
    const std::size_t cb = std::size_t{1} << control;
    const std::size_t tb = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & cb) && !(i & tb)) std::swap(amps_[i], amps_[i | tb]);
}

void Statevector::cz(std::size_t a, std::size_t b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) throw UsageError("cz: qubits must differ");
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & mask) == mask) amps_[i] = -amps_[i];
}

void Statevector::diagonal_phase(std::span<const double> diagonal, double angle) {
    if (diagonal.size() != amps_.size()) throw UsageError("diagonal_phase: diagonal length must be 2^n");
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] *= std::polar(1.0, -angle * diagonal[i]);
}

void Statevector::apply_pauli(const std::string& pauli) {
    if (pauli.size() != n_qubits_) throw UsageError("pauli string length must equal the qubit count");
    std::size_t flip = 0;
    std::size_t zmask = 0;
    std::size_t ymask = 0;
    for (std::size_t q = 0; q < pauli.size(); ++q) {
        const std::size_t bit = std::size_t{1} << q;
        switch (pauli[q]) {
        case 'I': break;
        case 'X': flip |= bit; break;
        case 'Y': flip |= bit; ymask |= bit; break;
        case 'Z': zmask |= bit; break;
        default: throw UsageError(std::string("invalid pauli character '") + pauli[q] + "'");
        }
    }
    // Y = i X Z: on input basis state x, Y_q contributes i * (-1)^{x_q}
    std::vector<Complex> out(amps_.size());
    const int ny = std::popcount(ymask);
    static const Complex kIPowers[] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const Complex ypow = kIPowers[ny % 4];
    for (std::size_t x = 0; x < amps_.size(); ++x) {
        int parity = std::popcount(x & (zmask | ymask)) & 1;
        Complex factor = parity ? -ypow : ypow;
        out[x ^ flip] = factor * amps_[x];
    }
    amps_ = std::move(out);
}

Complex Statevector::inner(const Statevector& other) const {
    if (other.size() != size()) throw UsageError("inner: size mismatch");
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
}

} // namespace landscape::testbed
