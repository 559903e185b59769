#include "landscape/geometric.hpp"

#include <cmath>

#include "landscape/random.hpp"

namespace landscape {

Direction::Direction(ParameterVector vector) : vector_(std::move(vector)), norm_(vector_.norm()) {
    if (!(norm_ > 0.0)) throw UsageError("direction must be non-zero");
}

Direction Direction::unit() const { return Direction(vector_ * (1.0 / norm_)); }

Direction Direction::scaled_to(double norm) const {
    if (!(norm > 0.0)) throw UsageError("direction norm must be positive");
    return Direction(vector_ * (norm / norm_));
}

double Direction::cosine(const Direction& other) const {
    return vector_.dot(other.vector_) / (norm_ * other.norm_);
}

Direction random_unit_direction(std::size_t dimension, std::uint64_t seed) {
    if (dimension == 0) throw UsageError("random_unit_direction: dimension must be >= 1");
    Rng rng(seed);
    std::vector<double> v(dimension);
    double n2 = 0.0;
    // a zero draw has probability zero but is cheap to rule out
    while (!(n2 > 0.0)) {
        n2 = 0.0;
        for (double& c : v) {
            c = rng.normal();
            n2 += c * c;
        }
    }
    return Direction(ParameterVector(std::move(v))).unit();
}

Direction orthonormal_complement(const Direction& base, std::uint64_t seed) {
    const std::size_t dim = base.dimension();
    if (dim < 2) throw UsageError("orthonormal_complement: dimension 1 has no orthogonal complement");
    const Direction b = base.unit();

    constexpr int kMaxAttempts = 16;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Direction draw = random_unit_direction(dim, mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        double proj = draw.vector().dot(b.vector());
        std::vector<double> v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = draw[i] - proj * b[i];
        double n = 0.0;
        for (double c : v) n += c * c;
        n = std::sqrt(n);
        if (n < 1e-6) continue; // draw nearly parallel to base
        for (double& c : v) c /= n;
        // second pass removes the residual component left by round-off
        double residual = 0.0;
        for (std::size_t i = 0; i < dim; ++i) residual += v[i] * b[i];
        for (std::size_t i = 0; i < dim; ++i) v[i] -= residual * b[i];
        return Direction(ParameterVector(std::move(v))).unit();
    }
    throw NumericalError("orthonormal_complement: every draw was parallel to the base direction");
}

namespace {

double wrap_coordinate(double reference, double target, double period) {
    double k = std::floor((target - reference + 0.5 * period) / period);
    double out = target - k * period;
    // guard the half-open interval against round-off in the floor argument
    if (out - reference >= 0.5 * period) out -= period;
    if (out - reference < -0.5 * period) out += period;
    return out;
}

} // namespace

ParameterVector relative_periodic_wrap(const ParameterVector& reference, const ParameterVector& target,
                                       double period) {
    if (!(period > 0.0) || !std::isfinite(period)) throw UsageError("period must be positive");
    if (reference.dimension() != target.dimension()) throw UsageError("wrap: dimension mismatch");
    std::vector<double> out(target.dimension());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = wrap_coordinate(reference[i], target[i], period);
    return ParameterVector(std::move(out));
}

std::vector<ParameterVector> wrap_trajectory(const ParameterVector& reference,
                                             const std::vector<ParameterVector>& trajectory, double period) {
    std::vector<ParameterVector> out;
    out.reserve(trajectory.size());
    const ParameterVector* anchor = &reference;
    for (const auto& p : trajectory) {
        out.push_back(relative_periodic_wrap(*anchor, p, period));
        anchor = &out.back();
    }
    return out;
}

} // namespace landscape
