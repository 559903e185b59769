#include "landscape/testbed/models.hpp"

#include <algorithm>
#include <cmath>

#include "landscape/random.hpp"

namespace landscape::testbed {

double sombrero_radial(double nu, double radius) {
    const double x = nu * radius;
    if (x == 0.0) return 0.0;
    return 1.0 - std::sin(x) / x;
}

double sombrero_critical_radius(double nu, std::size_t k) {
    if (!(nu > 0.0)) throw UsageError("sombrero: nu must be positive");
    if (k == 0) throw UsageError("sombrero: critical point index starts at 1");
    // roots of x cos x - sin x = 0 lie just below (k + 1/2) pi
    const double pi = std::acos(-1.0);
    double x = (static_cast<double>(k) + 0.5) * pi - 1.0 / ((static_cast<double>(k) + 0.5) * pi);
    for (int it = 0; it < 50; ++it) {
        const double g = x * std::cos(x) - std::sin(x);
        const double dg = -x * std::sin(x);
        const double dx = g / dg;
        x -= dx;
        if (std::abs(dx) < 1e-15 * x) break;
    }
    return x / nu;
}

ModelPtr sombrero_loss(double nu, std::size_t dimension) {
    if (!(nu > 0.0)) throw UsageError("sombrero: nu must be positive");
    return make_function_model(
        dimension,
        [nu](std::span<const double> theta) {
            double r2 = 0.0;
            for (double t : theta) r2 += t * t;
            return sombrero_radial(nu, std::sqrt(r2));
        },
        ModelTraits{}, Json{{"kind", "sombrero"}, {"nu", nu}, {"dimension", dimension}});
}

ModelPtr constant_loss(double value, std::size_t dimension) {
    return make_function_model(
        dimension, [value](std::span<const double>) { return value; }, ModelTraits{},
        Json{{"kind", "constant"}, {"value", value}, {"dimension", dimension}});
}

ModelPtr quadratic_loss(const Matrix& hessian, std::vector<double> centre) {
    const std::size_t n = hessian.rows();
    if (n == 0 || hessian.cols() != n) throw UsageError("quadratic: hessian must be square and non-empty");
    if (centre.empty()) centre.assign(n, 0.0);
    if (centre.size() != n) throw UsageError("quadratic: centre dimension mismatch");
    Matrix h = hessian.symmetrized();
    Json rows = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < n; ++j) row.push_back(h(i, j));
        rows.push_back(row);
    }
    return make_function_model(
        n,
        [h, centre](std::span<const double> theta) {
            double s = 0.0;
            for (std::size_t i = 0; i < theta.size(); ++i)
                for (std::size_t j = 0; j < theta.size(); ++j)
                    s += (theta[i] - centre[i]) * h(i, j) * (theta[j] - centre[j]);
            return 0.5 * s;
        },
        ModelTraits{}, Json{{"kind", "quadratic"}, {"hessian", rows}, {"centre", centre}});
}

ModelPtr linear_loss(std::vector<double> coefficients, double offset) {
    const std::size_t n = coefficients.size();
    Json desc{{"kind", "linear"}, {"coefficients", coefficients}, {"offset", offset}};
    return make_function_model(
        n,
        [c = std::move(coefficients), offset](std::span<const double> theta) {
            double s = offset;
            for (std::size_t i = 0; i < theta.size(); ++i) s += c[i] * theta[i];
            return s;
        },
        ModelTraits{}, std::move(desc));
}

ModelPtr qaoa_maxcut_loss(const WeightedGraph& graph, std::size_t layers, std::size_t max_qubits) {
    QaoaAnsatz ansatz(graph, layers, max_qubits);
    ModelTraits traits;
    traits.period = declared_period(ansatz);
    Json desc = describe(ansatz);
    desc["kind"] = "qaoa_maxcut";
    return make_function_model(
        2 * layers,
        [ansatz](std::span<const double> theta) {
            Statevector s = build_state(ansatz, theta);
            std::vector<double> prob(s.size());
            for (std::size_t x = 0; x < s.size(); ++x) prob[x] = std::norm(s[x]);
            // <Z_u Z_v> per edge, with the even- and odd-parity mass summed
            // separately so that equal weights cancel exactly
            double e = 0.0;
            for (const auto& edge : ansatz.graph.edges()) {
                double even = 0.0, odd = 0.0;
                for (std::size_t x = 0; x < prob.size(); ++x) {
                    if (((x >> edge.u) ^ (x >> edge.v)) & 1U) odd += prob[x];
                    else even += prob[x];
                }
                e += edge.weight * (even - odd);
            }
            return e;
        },
        traits, std::move(desc));
}

double clipped_kl(const DiscreteDistribution& target, const std::vector<double>& model, double epsilon) {
    if (model.size() != target.size()) throw UsageError("kl: distribution sizes differ");
    double kl = 0.0;
    for (std::size_t x = 0; x < model.size(); ++x) {
        double p = target[x];
        if (p == 0.0) continue;
        double q = std::max(model[x], epsilon);
        kl += p * std::log(p / q);
    }
    return kl;
}

namespace {

ModelTraits ansatz_traits(const AnsatzSpec& ansatz) {
    ModelTraits t;
    t.period = declared_period(ansatz);
    return t;
}

Json pauli_descriptor(const AnsatzSpec& ansatz, const PauliSum& h) {
    Json terms = Json::array();
    for (const auto& t : h.terms()) terms.push_back({t.coefficient, t.ops});
    return Json{{"kind", "pauli_expectation"}, {"ansatz", describe(ansatz)}, {"terms", terms}};
}

} // namespace

QcbmKlLoss::QcbmKlLoss(AnsatzSpec ansatz, DiscreteDistribution target, double epsilon)
    : LossModel(parameter_count(ansatz), ansatz_traits(ansatz),
                Json{{"kind", "qcbm_kl"}, {"ansatz", describe(ansatz)}, {"epsilon", epsilon},
                     {"target", target.probabilities()}}),
      ansatz_(std::move(ansatz)),
      target_(std::move(target)),
      epsilon_(epsilon) {
    if (!(epsilon_ > 0.0)) throw UsageError("qcbm: epsilon must be positive");
    if (qubit_count(ansatz_) != target_.n_qubits()) throw UsageError("qcbm: target and ansatz qubit counts differ");
}

DiscreteDistribution QcbmKlLoss::model_distribution(std::span<const double> theta) const {
    return born_distribution(build_state(ansatz_, theta));
}

double QcbmKlLoss::compute(std::span<const double> theta, std::uint64_t) const {
    return clipped_kl(target_, model_distribution(theta).probabilities(), epsilon_);
}

PauliExpectationLoss::PauliExpectationLoss(AnsatzSpec ansatz, PauliSum hamiltonian)
    : LossModel(parameter_count(ansatz), ansatz_traits(ansatz), pauli_descriptor(ansatz, hamiltonian)),
      ansatz_(std::move(ansatz)),
      hamiltonian_(std::move(hamiltonian)) {
    if (qubit_count(ansatz_) != hamiltonian_.n_qubits()) {
        throw UsageError("pauli loss: hamiltonian and ansatz qubit counts differ");
    }
}

std::vector<double> PauliExpectationLoss::term_expectations(std::span<const double> theta) const {
    return hamiltonian_.term_expectations(build_state(ansatz_, theta));
}

double PauliExpectationLoss::single_shot_variance(std::span<const double> theta) const {
    auto e = term_expectations(theta);
    double v = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        double c = hamiltonian_.terms()[k].coefficient;
        v += c * c * std::max(0.0, 1.0 - e[k] * e[k]);
    }
    return v;
}

double PauliExpectationLoss::compute(std::span<const double> theta, std::uint64_t) const {
    return hamiltonian_.expectation(build_state(ansatz_, theta));
}

std::shared_ptr<QcbmKlLoss> qcbm_kl_loss(AnsatzSpec ansatz, DiscreteDistribution target, double epsilon) {
    return std::make_shared<QcbmKlLoss>(std::move(ansatz), std::move(target), epsilon);
}

std::shared_ptr<PauliExpectationLoss> pauli_expectation_loss(AnsatzSpec ansatz, PauliSum hamiltonian) {
    return std::make_shared<PauliExpectationLoss>(std::move(ansatz), std::move(hamiltonian));
}

namespace {

ModelTraits shot_traits(const LossModel& exact) {
    ModelTraits t = exact.traits();
    t.deterministic = false;
    // sub-seeds follow the call counter, so evaluation order must be fixed
    t.concurrent = false;
    return t;
}

Json shot_descriptor(const LossModel& exact, std::uint64_t shots, std::uint64_t seed) {
    return Json{{"kind", "shot_noise"}, {"shots", shots}, {"seed", seed}, {"exact", exact.descriptor()}};
}

} // namespace

ShotNoisePauliLoss::ShotNoisePauliLoss(std::shared_ptr<const PauliExpectationLoss> exact, std::uint64_t shots_per_term,
                                       std::uint64_t seed)
    : LossModel(exact->dimension(), shot_traits(*exact), shot_descriptor(*exact, shots_per_term, seed)),
      exact_(std::move(exact)),
      shots_(shots_per_term),
      seed_(seed) {
    if (shots_ == 0) throw UsageError("shot noise: shots must be >= 1");
}

double ShotNoisePauliLoss::compute(std::span<const double> theta, std::uint64_t call_index) const {
    Rng rng = Rng::derive(seed_, call_index);
    const auto expectations = exact_->term_expectations(theta);
    const auto& terms = exact_->hamiltonian().terms();
    double total = 0.0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const double p_plus = std::clamp(0.5 * (1.0 + expectations[k]), 0.0, 1.0);
        std::uint64_t plus = 0;
        for (std::uint64_t s = 0; s < shots_; ++s)
            if (rng.uniform() < p_plus) ++plus;
        const double mean = (2.0 * static_cast<double>(plus) - static_cast<double>(shots_)) / static_cast<double>(shots_);
        total += terms[k].coefficient * mean;
    }
    return total;
}

std::vector<double> sample_frequencies(const DiscreteDistribution& dist, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw UsageError("sample_frequencies: shots must be >= 1");
    const auto& p = dist.probabilities();
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        cdf[i] = acc;
    }
    Rng rng(seed);
    std::vector<double> counts(p.size(), 0.0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        double u = rng.uniform() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), p.size() - 1);
        // never select an outcome with zero probability
        while (p[idx] == 0.0 && idx > 0) --idx;
        counts[idx] += 1.0;
    }
    for (double& c : counts) c /= static_cast<double>(shots);
    return counts;
}

ShotNoiseKlLoss::ShotNoiseKlLoss(std::shared_ptr<const QcbmKlLoss> exact, std::uint64_t shots, std::uint64_t seed)
    : LossModel(exact->dimension(), shot_traits(*exact), shot_descriptor(*exact, shots, seed)),
      exact_(std::move(exact)),
      shots_(shots),
      seed_(seed) {
    if (shots_ == 0) throw UsageError("shot noise: shots must be >= 1");
}

double ShotNoiseKlLoss::compute(std::span<const double> theta, std::uint64_t call_index) const {
    DiscreteDistribution q = exact_->model_distribution(theta);
    std::vector<double> freq = sample_frequencies(q, shots_, mix_seed(seed_, call_index));
    return clipped_kl(exact_->target(), freq, exact_->epsilon());
}

ModelPtr with_shot_noise(std::shared_ptr<const PauliExpectationLoss> exact, std::uint64_t shots_per_term,
                         std::uint64_t seed) {
    if (shots_per_term == 0) throw UsageError("shot noise: shots must be >= 1");
    return std::make_shared<ShotNoisePauliLoss>(std::move(exact), shots_per_term, seed);
}

ModelPtr with_shot_noise(std::shared_ptr<const QcbmKlLoss> exact, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw UsageError("shot noise: shots must be >= 1");
    return std::make_shared<ShotNoiseKlLoss>(std::move(exact), shots, seed);
}

} // namespace landscape::testbed
