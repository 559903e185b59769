#include "landscape/testbed/optimizers.hpp"

#include <cmath>

#include "landscape/random.hpp"

namespace landscape::testbed {

OptimizationTrace gradient_descent(const LossModel& model, const GradientEstimator& estimator,
                                   const ParameterVector& initial, double learning_rate, std::size_t iterations) {
    if (!(learning_rate > 0.0)) throw UsageError("gradient_descent: learning_rate must be positive");
    OptimizationTrace trace;
    trace.trajectory.reserve(iterations + 1);
    trace.trajectory.push_back(initial);
    trace.losses.push_back(model.evaluate(initial));
    for (std::size_t k = 0; k < iterations; ++k) {
        try {
            ParameterVector g = gradient(model, trace.trajectory.back(), estimator);
            ParameterVector next = trace.trajectory.back() - learning_rate * g;
            double loss = model.evaluate(next);
            trace.trajectory.push_back(std::move(next));
            trace.losses.push_back(loss);
        } catch (const NumericalError& e) {
            trace.error = std::string("iteration ") + std::to_string(k) + ": " + e.what();
            break;
        } catch (const UsageError& e) {
            // a non-finite step surfaces as a non-finite parameter vector
            trace.error = std::string("iteration ") + std::to_string(k) + ": " + e.what();
            break;
        }
    }
    return trace;
}

ParameterVector spsa_gradient(const LossModel& model, const ParameterVector& point, std::size_t n_directions,
                              double eps, std::uint64_t seed) {
    if (n_directions < 1) throw UsageError("spsa_gradient: n_directions must be >= 1");
    if (!(eps > 0.0)) throw UsageError("spsa_gradient: eps must be positive");
    const std::size_t dim = model.dimension();
    if (point.dimension() != dim) throw UsageError("spsa_gradient: dimension mismatch");

    Rng rng(seed);
    std::vector<std::vector<double>> deltas(n_directions, std::vector<double>(dim));
    std::vector<ParameterVector> probes;
    probes.reserve(2 * n_directions);
    for (auto& d : deltas) {
        for (double& c : d) c = rng.rademacher();
        std::vector<double> plus(dim), minus(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            plus[i] = point[i] + eps * d[i];
            minus[i] = point[i] - eps * d[i];
        }
        probes.emplace_back(std::move(plus));
        probes.emplace_back(std::move(minus));
    }
    const std::vector<double> f = evaluate_many(model, probes);

    std::vector<double> g(dim, 0.0);
    for (std::size_t r = 0; r < n_directions; ++r) {
        const double slope = (f[2 * r] - f[2 * r + 1]) / (2.0 * eps);
        for (std::size_t i = 0; i < dim; ++i) g[i] += slope * deltas[r][i];
    }
    for (double& c : g) c /= static_cast<double>(n_directions);
    return ParameterVector(std::move(g));
}

ParameterVector spsa_step(const LossModel& model, const ParameterVector& point, double learning_rate,
                          std::size_t n_directions, double eps, std::uint64_t seed) {
    if (!(learning_rate > 0.0)) throw UsageError("spsa_step: learning_rate must be positive");
    return point - learning_rate * spsa_gradient(model, point, n_directions, eps, seed);
}

OptimizationTrace spsa_optimize(const LossModel& model, const ParameterVector& initial, double learning_rate,
                                std::size_t iterations, std::size_t n_directions, double eps, std::uint64_t seed) {
    if (!(learning_rate > 0.0)) throw UsageError("spsa_optimize: learning_rate must be positive");
    OptimizationTrace trace;
    trace.trajectory.push_back(initial);
    trace.losses.push_back(model.evaluate(initial));
    for (std::size_t k = 0; k < iterations; ++k) {
        try {
            ParameterVector next =
                spsa_step(model, trace.trajectory.back(), learning_rate, n_directions, eps, mix_seed(seed, k));
            double loss = model.evaluate(next);
            trace.trajectory.push_back(std::move(next));
            trace.losses.push_back(loss);
        } catch (const NumericalError& e) {
            trace.error = std::string("iteration ") + std::to_string(k) + ": " + e.what();
            break;
        }
    }
    return trace;
}

} // namespace landscape::testbed
