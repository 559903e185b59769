#pragma once

#include <cstdint>
#include <vector>

#include "landscape/core.hpp"
#include "landscape/geometric.hpp"
#include "landscape/linalg.hpp"
#include "landscape/scans.hpp"

namespace landscape {

/// Symmetric Hessian at a point with its ascending eigendecomposition.
struct HessianResult {
    Matrix matrix;
    std::vector<double> eigenvalues;
    std::vector<Direction> eigenvectors;
    ParameterVector point;
    /// max |H_ij - H_ji| of the raw stencil estimate, before symmetrization.
    double raw_asymmetry = 0.0;
    /// Set when the model is stochastic; eigen-residual bounds do not apply.
    bool stochastic = false;
};

/// Symmetrizes `raw` and attaches its Jacobi eigendecomposition.
HessianResult make_hessian_result(const Matrix& raw, const ParameterVector& point, bool stochastic);

/// Central-difference Hessian.
///
/// Costs 1 + 2*dim + 4*dim*(dim-1)/2 evaluations: one centre value shared by
/// all diagonal stencils, and a four-point stencil per off-diagonal pair.
HessianResult exact_hessian(const LossModel& model, const ParameterVector& point, double step = 1e-3);

/// Stochastic (SPSA) Hessian averaged over `repetitions` pairs of Rademacher
/// directions. Costs exactly 4 * repetitions evaluations.
HessianResult spsa_hessian(const LossModel& model, const ParameterVector& point, std::size_t repetitions,
                           double eps, std::uint64_t seed);

/// Element-wise mean of the ascending spectra of several Hessians, matched by
/// rank. All spectra must share one dimension and the list must be non-empty.
std::vector<double> mean_sorted_spectrum(const std::vector<HessianResult>& hessians);

struct EigenScan {
    std::size_t index;
    double eigenvalue;
    Scan1DResult scan;
};

/// One linear scan through the Hessian's point per selected eigenvector.
std::vector<EigenScan> eigenvector_scans(const HessianResult& hessian, const LossModel& model,
                                         const std::vector<std::size_t>& which, Interval range,
                                         std::size_t n_points);

struct HessianConfig {
    enum class Method { exact, spsa } method = Method::exact;
    double step = 1e-3;
    std::size_t repetitions = 100;
    double eps = 1e-2;
    std::uint64_t seed = 0;
};

HessianResult compute_hessian(const LossModel& model, const ParameterVector& point, const HessianConfig& config);

/// Cell value recorded where lambda_max == 0 and the ratio is undefined.
inline constexpr double kUndefinedRatio = -2.0;

/// Grid of lambda_min / lambda_max of the local Hessian.
Scan2DResult eigenvalue_ratio_scan(const LossModel& model, const ParameterVector& origin, const Direction& dir_x,
                                   const Direction& dir_y, Interval range_x, Interval range_y,
                                   std::size_t resolution_x, std::size_t resolution_y,
                                   const HessianConfig& config);

} // namespace landscape
