#pragma once

#include <cstddef>
#include <vector>

#include "landscape/core.hpp"
#include "landscape/geometric.hpp"
#include "landscape/scans.hpp"

namespace landscape {

/// Ordered pivots p_0 .. p_{N+1}; the two endpoints never move.
class Chain {
public:
    explicit Chain(std::vector<ParameterVector> pivots);

    std::size_t size() const noexcept { return pivots_.size(); }
    std::size_t dimension() const noexcept { return pivots_.front().dimension(); }
    const ParameterVector& operator[](std::size_t i) const { return pivots_[i]; }
    const std::vector<ParameterVector>& pivots() const noexcept { return pivots_; }
    const ParameterVector& front() const { return pivots_.front(); }
    const ParameterVector& back() const { return pivots_.back(); }

    /// Copy with new interior pivots and the same endpoints.
    Chain with_interior(std::vector<ParameterVector> interior) const;

    std::vector<double> segment_lengths() const;
    double length() const;

private:
    std::vector<ParameterVector> pivots_;
};

struct NebConfig {
    double learning_rate = 0.1;
    /// Gradient steps per run_neb call (and per AutoNEB cycle).
    std::size_t iterations = 100;
    /// AutoNEB cycles.
    std::size_t cycles = 4;
    /// 0 selects the projected-gradient variant with redistribution.
    double spring_constant = 0.0;
    double relative_insert_tolerance = 0.2;
    double absolute_insert_tolerance = 0.0;
    std::size_t max_new_pivots = 4;

    void validate() const;
};

/// n_pivots uniform linear interpolants between a and b, endpoints included.
Chain init_chain(const ParameterVector& point_a, const ParameterVector& point_b, std::size_t n_pivots = 10);

/// Unit tangents of the interior pivots, pointing along the segment toward
/// the higher-loss neighbour.
std::vector<Direction> chain_tangents(const Chain& chain, const std::vector<double>& losses);

std::vector<double> evaluate_pivots(const LossModel& model, const Chain& chain);

/// One update of the interior pivots. With spring_constant == 0 each pivot
/// moves along the gradient with its tangential part removed; otherwise the
/// spring force of the elastic-band energy is added to that force.
Chain neb_step(const Chain& chain, const LossModel& model, const GradientEstimator& gradient_estimator,
               const NebConfig& config);

/// Moves interior pivots to equal arc-length spacing along the current path.
Chain redistribute_chain(const Chain& chain);

/// Returns the initial chain followed by the chain after every iteration.
std::vector<Chain> run_neb(const Chain& chain, const LossModel& model, const GradientEstimator& gradient_estimator,
                           const NebConfig& config);

/// Returns the initial chain followed by the chain after every cycle.
std::vector<Chain> run_auto_neb(const Chain& chain, const LossModel& model,
                                const GradientEstimator& gradient_estimator, const NebConfig& config);

/// Segment midpoints where the loss departs from the linear interpolation of
/// the pivot losses by more than abs_tol + rel_tol * |interpolated|. Worst
/// first, at most config.max_new_pivots.
Chain insert_pivots(const Chain& chain, const LossModel& model, const NebConfig& config);

/// Loss along the piecewise-linear path, parameterized by normalized arc length.
Scan1DResult chain_loss_profile(const Chain& chain, const LossModel& model, std::size_t samples_per_segment);

} // namespace landscape
