#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "landscape/core.hpp"

namespace landscape::testbed {

struct OptimizationTrace {
    /// Includes the initial point.
    std::vector<ParameterVector> trajectory;
    std::vector<double> losses;
    /// Set when the run stopped early; trajectory holds the points reached.
    std::optional<std::string> error;

    const ParameterVector& final_point() const { return trajectory.back(); }
    double final_loss() const { return losses.back(); }
};

/// theta_{k+1} = theta_k - learning_rate * grad L(theta_k).
OptimizationTrace gradient_descent(const LossModel& model, const GradientEstimator& estimator,
                                   const ParameterVector& initial, double learning_rate, std::size_t iterations);

/// Mean over n_directions Rademacher directions D of
/// [L(theta + eps D) - L(theta - eps D)] / (2 eps) * D. Costs 2 * n_directions evaluations.
ParameterVector spsa_gradient(const LossModel& model, const ParameterVector& point, std::size_t n_directions,
                              double eps, std::uint64_t seed);

/// point - learning_rate * spsa_gradient(...); exactly 2 * n_directions evaluations.
ParameterVector spsa_step(const LossModel& model, const ParameterVector& point, double learning_rate,
                          std::size_t n_directions, double eps, std::uint64_t seed);

/// Plain SPSA descent with a constant learning rate; step k draws its
/// directions from (seed, k). The loss is recorded after every step, so each
/// iteration costs 2 * n_directions + 1 evaluations.
OptimizationTrace spsa_optimize(const LossModel& model, const ParameterVector& initial, double learning_rate,
                                std::size_t iterations, std::size_t n_directions, double eps, std::uint64_t seed);

} // namespace landscape::testbed
