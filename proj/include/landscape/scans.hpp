#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "landscape/core.hpp"
#include "landscape/geometric.hpp"

namespace landscape {

/// Closed interval [lo, hi] with lo < hi.
struct Interval {
    double lo = -1.0;
    double hi = 1.0;

    void validate(const char* what) const;
    /// n uniform samples including both ends.
    std::vector<double> samples(std::size_t n) const;
    double width() const noexcept { return hi - lo; }
};

enum class ScanKind { linear, interpolation, piecewise };

std::string to_string(ScanKind kind);

struct Scan1DResult {
    std::vector<double> ts;
    std::vector<double> values;
    ParameterVector origin;
    Direction direction;
    ScanKind kind = ScanKind::linear;
};

/// Loss values over the plane origin + t1 * dir_x + t2 * dir_y.
///
/// Storage is row-major over (i, j) with i indexing t1 (x) and j indexing t2
/// (y): value(i, j) == values[i * ys.size() + j].
struct Scan2DResult {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> values;
    ParameterVector origin;
    Direction dir_x;
    Direction dir_y;
    Interval range_x;
    Interval range_y;

    std::size_t resolution_x() const noexcept { return xs.size(); }
    std::size_t resolution_y() const noexcept { return ys.size(); }
    double value(std::size_t i, std::size_t j) const { return values[i * ys.size() + j]; }
    ParameterVector point(std::size_t i, std::size_t j) const;
};

Scan1DResult scan_1d_linear(const LossModel& model, const ParameterVector& origin, const Direction& direction,
                            Interval range, std::size_t n_points);

/// f(t) = L((1 - t) a + t b). The recorded direction is b - a.
Scan1DResult scan_1d_interpolation(const LossModel& model, const ParameterVector& point_a,
                                   const ParameterVector& point_b, Interval range = {-0.5, 1.5},
                                   std::size_t n_points = 100);

Scan2DResult scan_2d(const LossModel& model, const ParameterVector& origin, const Direction& dir_x,
                     const Direction& dir_y, Interval range_x, Interval range_y, std::size_t resolution_x,
                     std::size_t resolution_y);

/// 2D scan with dir_x = b - a and a random orthogonal dir_y of the same norm,
/// anchored at a (so t1 = 0 maps to a, t1 = 1 to b).
Scan2DResult scan_2d_interpolation(const LossModel& model, const ParameterVector& point_a,
                                   const ParameterVector& point_b, std::uint64_t seed,
                                   Interval range_x = {-0.5, 1.5}, Interval range_y = {-0.5, 0.5},
                                   std::size_t resolution_x = 50, std::size_t resolution_y = 50);

/// Grid variant used by scans whose cells are not plain loss evaluations.
template <typename CellFn>
Scan2DResult scan_2d_with(const ParameterVector& origin, const Direction& dir_x, const Direction& dir_y,
                          Interval range_x, Interval range_y, std::size_t resolution_x,
                          std::size_t resolution_y, CellFn&& cell);

void validate_plane(const ParameterVector& origin, const Direction& dir_x, const Direction& dir_y,
                    Interval range_x, Interval range_y, std::size_t resolution_x, std::size_t resolution_y);

template <typename CellFn>
Scan2DResult scan_2d_with(const ParameterVector& origin, const Direction& dir_x, const Direction& dir_y,
                          Interval range_x, Interval range_y, std::size_t resolution_x,
                          std::size_t resolution_y, CellFn&& cell) {
    validate_plane(origin, dir_x, dir_y, range_x, range_y, resolution_x, resolution_y);
    Scan2DResult r{range_x.samples(resolution_x), range_y.samples(resolution_y), {}, origin, dir_x, dir_y,
                   range_x, range_y};
    r.values.reserve(resolution_x * resolution_y);
    for (std::size_t i = 0; i < resolution_x; ++i)
        for (std::size_t j = 0; j < resolution_y; ++j) r.values.push_back(cell(r.point(i, j)));
    return r;
}

} // namespace landscape
