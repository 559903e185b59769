#include "landscape/scans.hpp"

#include <cmath>

namespace landscape {

void Interval::validate(const char* what) const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw UsageError(std::string(what) + ": range must satisfy lo < hi");
    }
}

std::vector<double> Interval::samples(std::size_t n) const {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    out.back() = hi;
    return out;
}

std::string to_string(ScanKind kind) {
    switch (kind) {
    case ScanKind::linear: return "linear";
    case ScanKind::interpolation: return "interpolation";
    case ScanKind::piecewise: return "piecewise";
    }
    return "unknown";
}

ParameterVector Scan2DResult::point(std::size_t i, std::size_t j) const {
    const double t1 = xs.at(i);
    const double t2 = ys.at(j);
    std::vector<double> p(origin.dimension());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = origin[k] + t1 * dir_x[k] + t2 * dir_y[k];
    return ParameterVector(std::move(p));
}

Scan1DResult scan_1d_linear(const LossModel& model, const ParameterVector& origin, const Direction& direction,
                            Interval range, std::size_t n_points) {
    range.validate("scan_1d_linear");
    if (n_points < 2) throw UsageError("scan_1d_linear: n_points must be >= 2");
    if (origin.dimension() != model.dimension() || direction.dimension() != model.dimension()) {
        throw UsageError("scan_1d_linear: dimension mismatch");
    }
    std::vector<double> ts = range.samples(n_points);
    std::vector<ParameterVector> points;
    points.reserve(n_points);
    for (double t : ts) points.push_back(origin + t * direction.vector());
    std::vector<double> values = evaluate_many(model, points);
    return Scan1DResult{std::move(ts), std::move(values), origin, direction, ScanKind::linear};
}

Scan1DResult scan_1d_interpolation(const LossModel& model, const ParameterVector& point_a,
                                   const ParameterVector& point_b, Interval range, std::size_t n_points) {
    range.validate("scan_1d_interpolation");
    if (n_points < 2) throw UsageError("scan_1d_interpolation: n_points must be >= 2");
    if (point_a.dimension() != model.dimension() || point_b.dimension() != model.dimension()) {
        throw UsageError("scan_1d_interpolation: dimension mismatch");
    }
    ParameterVector diff = point_b - point_a;
    if (diff.norm() < 1e-12) throw UsageError("scan_1d_interpolation: endpoints coincide");

    std::vector<double> ts = range.samples(n_points);
    std::vector<ParameterVector> points;
    points.reserve(n_points);
    for (double t : ts) points.push_back(lerp(point_a, point_b, t));
    std::vector<double> values = evaluate_many(model, points);
    return Scan1DResult{std::move(ts), std::move(values), point_a, Direction(diff), ScanKind::interpolation};
}

void validate_plane(const ParameterVector& origin, const Direction& dir_x, const Direction& dir_y,
                    Interval range_x, Interval range_y, std::size_t resolution_x, std::size_t resolution_y) {
    range_x.validate("scan_2d x");
    range_y.validate("scan_2d y");
    if (resolution_x < 2 || resolution_y < 2) throw UsageError("scan_2d: resolutions must be >= 2");
    if (dir_x.dimension() != origin.dimension() || dir_y.dimension() != origin.dimension()) {
        throw UsageError("scan_2d: dimension mismatch");
    }
    if (std::abs(dir_x.cosine(dir_y)) >= 1.0 - 1e-9) throw UsageError("scan_2d: directions are parallel");
}

Scan2DResult scan_2d(const LossModel& model, const ParameterVector& origin, const Direction& dir_x,
                     const Direction& dir_y, Interval range_x, Interval range_y, std::size_t resolution_x,
                     std::size_t resolution_y) {
    if (origin.dimension() != model.dimension()) throw UsageError("scan_2d: dimension mismatch");
    validate_plane(origin, dir_x, dir_y, range_x, range_y, resolution_x, resolution_y);
    Scan2DResult r{range_x.samples(resolution_x), range_y.samples(resolution_y), {}, origin, dir_x, dir_y,
                   range_x, range_y};
    std::vector<ParameterVector> points;
    points.reserve(resolution_x * resolution_y);
    for (std::size_t i = 0; i < resolution_x; ++i)
        for (std::size_t j = 0; j < resolution_y; ++j) points.push_back(r.point(i, j));
    r.values = evaluate_many(model, points);
    return r;
}

Scan2DResult scan_2d_interpolation(const LossModel& model, const ParameterVector& point_a,
                                   const ParameterVector& point_b, std::uint64_t seed, Interval range_x,
                                   Interval range_y, std::size_t resolution_x, std::size_t resolution_y) {
    ParameterVector diff = point_b - point_a;
    if (diff.norm() < 1e-12) throw UsageError("scan_2d_interpolation: endpoints coincide");
    Direction dir_x(diff);
    Direction dir_y = orthonormal_complement(dir_x, seed).scaled_to(dir_x.norm());
    return scan_2d(model, point_a, dir_x, dir_y, range_x, range_y, resolution_x, resolution_y);
}

} // namespace landscape
