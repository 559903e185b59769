#include "landscape/testbed/pauli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "landscape/core.hpp"
#include "landscape/random.hpp"

namespace landscape::testbed {

PauliSum::PauliSum(std::size_t n_qubits, std::vector<PauliTerm> terms) : n_qubits_(n_qubits), terms_(std::move(terms)) {
    if (n_qubits_ == 0) throw UsageError("pauli sum needs at least one qubit");
    for (const auto& t : terms_) {
        if (!std::isfinite(t.coefficient)) throw UsageError("pauli sum: non-finite coefficient");
        if (t.ops.size() != n_qubits_) {
            throw UsageError("pauli string '" + t.ops + "' has length " + std::to_string(t.ops.size()) +
                             ", expected " + std::to_string(n_qubits_));
        }
        for (char c : t.ops)
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
                throw UsageError("pauli string '" + t.ops + "' contains '" + std::string(1, c) + "'");
            }
    }
}

PauliSum PauliSum::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<PauliTerm> terms;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        PauliTerm t;
        if (!(fields >> t.coefficient)) throw UsageError("pauli sum: malformed coefficient in line '" + line + "'");
        if (!(fields >> t.ops)) throw UsageError("pauli sum: term without operator string");
        terms.push_back(std::move(t));
    }
    if (terms.empty()) throw UsageError("pauli sum: no terms");
    const std::size_t n_qubits = terms.front().ops.size();
    return PauliSum(n_qubits, std::move(terms));
}

std::vector<double> PauliSum::term_expectations(const Statevector& state) const {
    if (state.n_qubits() != n_qubits_) throw UsageError("pauli expectation: qubit count mismatch");
    std::vector<double> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Statevector applied = state;
        applied.apply_pauli(t.ops);
        out.push_back(state.inner(applied).real());
    }
    return out;
}

double PauliSum::expectation(const Statevector& state) const {
    auto e = term_expectations(state);
    double s = 0.0;
    for (std::size_t k = 0; k < terms_.size(); ++k) s += terms_[k].coefficient * e[k];
    return s;
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> probabilities) : p_(std::move(probabilities)) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < p_.size()) ++n;
    if (n == 0 || (std::size_t{1} << n) != p_.size()) {
        throw UsageError("distribution length must be a power of two >= 2");
    }
    n_qubits_ = n;
    double sum = 0.0;
    for (double v : p_) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw UsageError("distribution entries must be finite and >= 0");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw UsageError("distribution must sum to 1");
}

DiscreteDistribution DiscreteDistribution::point_mass(std::size_t n_qubits, std::size_t outcome) {
    std::vector<double> p(std::size_t{1} << n_qubits, 0.0);
    p.at(outcome) = 1.0;
    return DiscreteDistribution(std::move(p));
}

DiscreteDistribution DiscreteDistribution::random(std::size_t n_qubits, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> p(std::size_t{1} << n_qubits);
    double sum = 0.0;
    for (double& v : p) {
        v = rng.uniform();
        sum += v;
    }
    for (double& v : p) v /= sum;
    return DiscreteDistribution(std::move(p));
}

std::size_t parse_bitstring(const std::string& bits) {
    if (bits.empty() || bits.size() > 30) throw UsageError("bitstring must have 1 to 30 characters");
    std::size_t index = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] == '1') index |= std::size_t{1} << k;
        else if (bits[k] != '0') throw UsageError("bitstring '" + bits + "' contains a non-binary character");
    }
    return index;
}

std::string format_bitstring(std::size_t index, std::size_t n_qubits) {
    std::string s(n_qubits, '0');
    for (std::size_t k = 0; k < n_qubits; ++k)
        if ((index >> k) & 1U) s[k] = '1';
    return s;
}

DiscreteDistribution parse_distribution(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t n_qubits = 0;
    std::vector<double> p;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string bits;
        double prob = 0.0;
        if (!(fields >> bits) || bits.front() == '#') continue;
        if (!(fields >> prob)) {
            throw UsageError("distribution file line " + std::to_string(line_no) + ": expected 'bitstring probability'");
        }
        if (n_qubits == 0) {
            n_qubits = bits.size();
            p.assign(std::size_t{1} << n_qubits, 0.0);
        } else if (bits.size() != n_qubits) {
            throw UsageError("distribution file line " + std::to_string(line_no) + ": bitstring length mismatch");
        }
        p[parse_bitstring(bits)] += prob;
    }
    if (n_qubits == 0) throw UsageError("distribution file has no entries");
    return DiscreteDistribution(std::move(p));
}

DiscreteDistribution read_distribution(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read distribution file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_distribution(buf.str());
}

DiscreteDistribution born_distribution(const Statevector& state) {
    std::vector<double> p(state.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::norm(state[i]);
        sum += p[i];
    }
    for (double& v : p) v /= sum;
    return DiscreteDistribution(std::move(p));
}

} // namespace landscape::testbed
