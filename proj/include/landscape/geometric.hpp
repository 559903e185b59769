#pragma once

#include <cstdint>
#include <vector>

#include "landscape/core.hpp"

namespace landscape {

/// Non-zero direction in parameter space with its cached 2-norm.
class Direction {
public:
    explicit Direction(ParameterVector vector);

    const ParameterVector& vector() const noexcept { return vector_; }
    double norm() const noexcept { return norm_; }
    std::size_t dimension() const noexcept { return vector_.dimension(); }
    double operator[](std::size_t i) const { return vector_[i]; }

    Direction unit() const;
    Direction scaled_to(double norm) const;
    /// cos of the angle between the two directions.
    double cosine(const Direction& other) const;

    friend bool operator==(const Direction& a, const Direction& b) { return a.vector_ == b.vector_; }

private:
    ParameterVector vector_;
    double norm_;
};

/// i.i.d. standard-normal coordinates, normalized to unit length.
Direction random_unit_direction(std::size_t dimension, std::uint64_t seed);

/// Random unit vector orthogonal to `base` (one Gram-Schmidt pass).
Direction orthonormal_complement(const Direction& base, std::uint64_t seed);

/// Copy of `target` shifted by whole periods so that every coordinate lies
/// in [reference - period/2, reference + period/2).
ParameterVector relative_periodic_wrap(const ParameterVector& reference, const ParameterVector& target,
                                       double period);

/// Wraps point k relative to the wrapped image of point k-1 (point 0 relative
/// to `reference`), so the path stays continuous across period boundaries.
std::vector<ParameterVector> wrap_trajectory(const ParameterVector& reference,
                                             const std::vector<ParameterVector>& trajectory, double period);

} // namespace landscape
