#pragma once

#include <cstddef>
#include <vector>

#include "landscape/core.hpp"
#include "landscape/geometric.hpp"
#include "landscape/scans.hpp"

namespace landscape {

/// Thrown when the fit data carry no variance at all.
class DegenerateDataError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Fitted PCA basis over a set of parameter vectors.
///
/// Variances use the 1/(n-1) sample convention. Each component's sign is
/// chosen so its largest-magnitude coordinate is positive.
struct PrincipalFrame {
    ParameterVector mean;
    std::vector<Direction> components;
    std::vector<double> explained_variance;
    std::vector<double> explained_ratio;
    double total_variance = 0.0;

    std::size_t dimension() const noexcept { return mean.dimension(); }
};

PrincipalFrame fit_principal_frame(const std::vector<ParameterVector>& points, std::size_t n_components);

/// Coordinates of (point - mean) on every retained component.
std::vector<std::vector<double>> project(const PrincipalFrame& frame, const std::vector<ParameterVector>& points);

/// mean + sum_k coords[k] * component_k
ParameterVector reconstruct(const PrincipalFrame& frame, const std::vector<double>& coords);

struct PcaScanResult {
    Scan2DResult scan;
    /// Projected fit points on the first two components, one polyline per
    /// input trajectory, in fit order.
    std::vector<std::vector<std::pair<double, double>>> overlays;
};

/// Scans the plane spanned by the first two components through the mean.
/// Ranges are the bounding box of the projected points, widened on each side
/// by `margin` times the box size.
PcaScanResult scan_pca_plane(const PrincipalFrame& frame, const LossModel& model,
                             const std::vector<std::vector<ParameterVector>>& trajectories,
                             double margin = 0.25, std::size_t resolution_x = 50,
                             std::size_t resolution_y = 50);

/// Fits a frame to the concatenation of several trajectories.
PrincipalFrame fit_joint_principal_frame(const std::vector<std::vector<ParameterVector>>& trajectories,
                                         std::size_t n_components);

} // namespace landscape
