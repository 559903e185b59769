#include "landscape/hessian.hpp"

#include <algorithm>
#include <cmath>

#include "landscape/random.hpp"

namespace landscape {

HessianResult make_hessian_result(const Matrix& raw, const ParameterVector& point, bool stochastic) {
    for (double v : raw.data())
        if (!std::isfinite(v)) throw NumericalError("hessian has non-finite entries", point.values());
    HessianResult r{raw.symmetrized(), {}, {}, point, raw.symmetry_residual(), stochastic};
    SymmetricEigen eig = jacobi_eigen(r.matrix);
    r.eigenvalues = std::move(eig.values);
    for (auto& v : eig.vectors) r.eigenvectors.emplace_back(ParameterVector(std::move(v)));
    return r;
}

HessianResult exact_hessian(const LossModel& model, const ParameterVector& point, double step) {
    if (!(step > 0.0)) throw UsageError("exact_hessian: step must be positive");
    const std::size_t dim = model.dimension();
    if (point.dimension() != dim) throw UsageError("exact_hessian: dimension mismatch");

    // probe layout: centre, then (+i, -i) per coordinate, then four corners per pair i < j
    std::vector<ParameterVector> probes;
    probes.reserve(1 + 2 * dim + 2 * dim * (dim - 1));
    probes.push_back(point);
    for (std::size_t i = 0; i < dim; ++i) {
        probes.push_back(point.shifted(i, step));
        probes.push_back(point.shifted(i, -step));
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            probes.push_back(point.shifted(i, step).shifted(j, step));
            probes.push_back(point.shifted(i, step).shifted(j, -step));
            probes.push_back(point.shifted(i, -step).shifted(j, step));
            probes.push_back(point.shifted(i, -step).shifted(j, -step));
        }
    }
    const std::vector<double> f = evaluate_many(model, probes);

    Matrix h(dim, dim);
    const double h2 = step * step;
    const double centre = f[0];
    for (std::size_t i = 0; i < dim; ++i) h(i, i) = (f[1 + 2 * i] - 2.0 * centre + f[2 + 2 * i]) / h2;
    std::size_t k = 1 + 2 * dim;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            double v = (f[k] - f[k + 1] - f[k + 2] + f[k + 3]) / (4.0 * h2);
            h(i, j) = v;
            h(j, i) = v;
            k += 4;
        }
    }
    return make_hessian_result(h, point, !model.deterministic());
}

HessianResult spsa_hessian(const LossModel& model, const ParameterVector& point, std::size_t repetitions,
                           double eps, std::uint64_t seed) {
    if (repetitions < 1) throw UsageError("spsa_hessian: repetitions must be >= 1");
    if (!(eps > 0.0)) throw UsageError("spsa_hessian: eps must be positive");
    const std::size_t dim = model.dimension();
    if (point.dimension() != dim) throw UsageError("spsa_hessian: dimension mismatch");

    Rng rng(seed);
    std::vector<std::vector<double>> d1(repetitions, std::vector<double>(dim));
    std::vector<std::vector<double>> d2(repetitions, std::vector<double>(dim));
    std::vector<ParameterVector> probes;
    probes.reserve(4 * repetitions);
    for (std::size_t r = 0; r < repetitions; ++r) {
        for (auto& c : d1[r]) c = rng.rademacher();
        for (auto& c : d2[r]) c = rng.rademacher();
        for (double s1 : {1.0, -1.0}) {
            for (double s2 : {1.0, -1.0}) {
                std::vector<double> p(dim);
                for (std::size_t k = 0; k < dim; ++k) p[k] = point[k] + eps * (s1 * d1[r][k] + s2 * d2[r][k]);
                probes.emplace_back(std::move(p));
            }
        }
    }
    const std::vector<double> f = evaluate_many(model, probes);

    Matrix h(dim, dim);
    for (std::size_t r = 0; r < repetitions; ++r) {
        // mixed second difference along (delta_1, delta_2)
        double second = (f[4 * r] - f[4 * r + 1] - f[4 * r + 2] + f[4 * r + 3]) / (4.0 * eps * eps);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                h(i, j) += second * 0.5 * (d1[r][i] * d2[r][j] + d2[r][i] * d1[r][j]);
    }
    const double inv = 1.0 / static_cast<double>(repetitions);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) h(i, j) *= inv;
    return make_hessian_result(h, point, !model.deterministic());
}

std::vector<double> mean_sorted_spectrum(const std::vector<HessianResult>& hessians) {
    if (hessians.empty()) throw UsageError("mean_sorted_spectrum: no spectra");
    std::vector<double> mean(hessians.front().eigenvalues.size(), 0.0);
    for (const auto& h : hessians) {
        if (h.eigenvalues.size() != mean.size()) throw UsageError("mean_sorted_spectrum: dimension mismatch");
        std::vector<double> sorted = h.eigenvalues;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += sorted[i];
    }
    for (double& m : mean) m /= static_cast<double>(hessians.size());
    return mean;
}

std::vector<EigenScan> eigenvector_scans(const HessianResult& hessian, const LossModel& model,
                                         const std::vector<std::size_t>& which, Interval range,
                                         std::size_t n_points) {
    std::vector<EigenScan> out;
    for (std::size_t idx : which) {
        if (idx >= hessian.eigenvalues.size()) throw UsageError("eigenvector_scans: index out of range");
    }
    for (std::size_t idx : which) {
        out.push_back(EigenScan{idx, hessian.eigenvalues[idx],
                                scan_1d_linear(model, hessian.point, hessian.eigenvectors[idx], range, n_points)});
    }
    return out;
}

HessianResult compute_hessian(const LossModel& model, const ParameterVector& point, const HessianConfig& config) {
    if (config.method == HessianConfig::Method::spsa) {
        return spsa_hessian(model, point, config.repetitions, config.eps, config.seed);
    }
    return exact_hessian(model, point, config.step);
}

Scan2DResult eigenvalue_ratio_scan(const LossModel& model, const ParameterVector& origin, const Direction& dir_x,
                                   const Direction& dir_y, Interval range_x, Interval range_y,
                                   std::size_t resolution_x, std::size_t resolution_y,
                                   const HessianConfig& config) {
    if (origin.dimension() != model.dimension()) throw UsageError("eigenvalue_ratio_scan: dimension mismatch");
    std::uint64_t cell = 0;
    return scan_2d_with(origin, dir_x, dir_y, range_x, range_y, resolution_x, resolution_y,
                        [&](const ParameterVector& p) {
                            HessianConfig local = config;
                            local.seed = mix_seed(config.seed, cell++);
                            HessianResult h = compute_hessian(model, p, local);
                            double lmax = h.eigenvalues.back();
                            if (lmax == 0.0) return kUndefinedRatio;
                            return h.eigenvalues.front() / lmax;
                        });
}

} // namespace landscape
