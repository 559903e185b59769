#include "landscape/pca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "landscape/linalg.hpp"

namespace landscape {

namespace {

std::vector<double> fix_sign(std::vector<double> v) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    if (v[arg] < 0.0)
        for (double& c : v) c = -c;
    return v;
}

void normalize(std::vector<double>& v) {
    double n = 0.0;
    for (double c : v) n += c * c;
    n = std::sqrt(n);
    for (double& c : v) c /= n;
}

// Extends `basis` with unit vectors orthogonal to everything already in it.
void complete_basis(std::vector<std::vector<double>>& basis, std::size_t target, std::size_t dim) {
    for (std::size_t e = 0; e < dim && basis.size() < target; ++e) {
        std::vector<double> v(dim, 0.0);
        v[e] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                double d = 0.0;
                for (std::size_t k = 0; k < dim; ++k) d += v[k] * b[k];
                for (std::size_t k = 0; k < dim; ++k) v[k] -= d * b[k];
            }
        }
        double n = 0.0;
        for (double c : v) n += c * c;
        if (n > 1e-6) {
            normalize(v);
            basis.push_back(std::move(v));
        }
    }
}

} // namespace

PrincipalFrame fit_principal_frame(const std::vector<ParameterVector>& points, std::size_t n_components) {
    const std::size_t n = points.size();
    if (n < 2) throw UsageError("fit_principal_frame: need at least 2 points");
    const std::size_t dim = points.front().dimension();
    for (const auto& p : points)
        if (p.dimension() != dim) throw UsageError("fit_principal_frame: points differ in dimension");
    if (n_components < 1 || n_components > std::min(n, dim)) {
        throw UsageError("fit_principal_frame: n_components must lie in [1, min(#points, dimension)]");
    }

    std::vector<double> mean(dim, 0.0);
    for (const auto& p : points)
        for (std::size_t k = 0; k < dim; ++k) mean[k] += p[k];
    for (double& m : mean) m /= static_cast<double>(n);

    Matrix centered(n, dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < dim; ++k) centered(i, k) = points[i][k] - mean[k];

    const double denom = static_cast<double>(n - 1);
    std::vector<double> variances;
    std::vector<std::vector<double>> vectors;

    if (dim <= n) {
        Matrix cov = centered.transposed() * centered;
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) cov(r, c) /= denom;
        SymmetricEigen eig = jacobi_eigen(cov);
        for (std::size_t k = dim; k-- > 0;) {
            variances.push_back(std::max(0.0, eig.values[k]));
            vectors.push_back(eig.vectors[k]);
        }
    } else {
        // Gram route: eigenvectors u of X X^T map to components X^T u.
        Matrix gram = centered * centered.transposed();
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) gram(r, c) /= denom;
        SymmetricEigen eig = jacobi_eigen(gram);
        const double top = std::max(0.0, eig.values.back());
        for (std::size_t k = n; k-- > 0;) {
            double lambda = std::max(0.0, eig.values[k]);
            if (lambda <= 1e-13 * top) break;
            std::vector<double> v(dim, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t d = 0; d < dim; ++d) v[d] += centered(i, d) * eig.vectors[k][i];
            normalize(v);
            variances.push_back(lambda);
            vectors.push_back(std::move(v));
        }
        complete_basis(vectors, n_components, dim);
        variances.resize(vectors.size(), 0.0);
    }

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < dim; ++k) total += centered(i, k) * centered(i, k);
    total /= denom;
    if (!(total > 0.0)) throw DegenerateDataError("fit_principal_frame: all points are identical");

    PrincipalFrame frame{ParameterVector(mean), {}, {}, {}, total};
    for (std::size_t k = 0; k < n_components; ++k) {
        frame.components.emplace_back(ParameterVector(fix_sign(vectors[k])));
        frame.explained_variance.push_back(variances[k]);
        frame.explained_ratio.push_back(variances[k] / total);
    }
    return frame;
}

PrincipalFrame fit_joint_principal_frame(const std::vector<std::vector<ParameterVector>>& trajectories,
                                         std::size_t n_components) {
    std::vector<ParameterVector> all;
    for (const auto& t : trajectories) all.insert(all.end(), t.begin(), t.end());
    return fit_principal_frame(all, n_components);
}

std::vector<std::vector<double>> project(const PrincipalFrame& frame, const std::vector<ParameterVector>& points) {
    std::vector<std::vector<double>> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        if (p.dimension() != frame.dimension()) throw UsageError("project: dimension mismatch");
        std::vector<double> coords;
        coords.reserve(frame.components.size());
        for (const auto& c : frame.components) {
            double s = 0.0;
            for (std::size_t k = 0; k < p.dimension(); ++k) s += (p[k] - frame.mean[k]) * c[k];
            coords.push_back(s);
        }
        out.push_back(std::move(coords));
    }
    return out;
}

ParameterVector reconstruct(const PrincipalFrame& frame, const std::vector<double>& coords) {
    if (coords.size() > frame.components.size()) throw UsageError("reconstruct: too many coordinates");
    std::vector<double> v = frame.mean.values();
    for (std::size_t c = 0; c < coords.size(); ++c)
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += coords[c] * frame.components[c][k];
    return ParameterVector(std::move(v));
}

PcaScanResult scan_pca_plane(const PrincipalFrame& frame, const LossModel& model,
                             const std::vector<std::vector<ParameterVector>>& trajectories, double margin,
                             std::size_t resolution_x, std::size_t resolution_y) {
    if (frame.components.size() < 2) throw UsageError("scan_pca_plane: frame needs at least 2 components");
    if (model.dimension() != frame.dimension()) throw UsageError("scan_pca_plane: dimension mismatch");
    if (!(margin >= 0.0)) throw UsageError("scan_pca_plane: margin must be >= 0");

    PcaScanResult out{Scan2DResult{{}, {}, {}, frame.mean, frame.components[0], frame.components[1], {}, {}}, {}};
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    for (const auto& traj : trajectories) {
        std::vector<std::pair<double, double>> line;
        for (const auto& c : project(frame, traj)) {
            line.emplace_back(c[0], c[1]);
            min_x = std::min(min_x, c[0]);
            max_x = std::max(max_x, c[0]);
            min_y = std::min(min_y, c[1]);
            max_y = std::max(max_y, c[1]);
        }
        out.overlays.push_back(std::move(line));
    }
    if (out.overlays.empty() || !std::isfinite(min_x)) {
        // no overlay data: frame the plane with one standard deviation per axis
        min_x = -std::sqrt(frame.explained_variance[0]);
        max_x = -min_x;
        min_y = -std::sqrt(frame.explained_variance[1]);
        max_y = -min_y;
    }

    const double wx = max_x - min_x;
    const double wy = max_y - min_y;
    const double floor_width = 1e-9 * std::max({1.0, wx, wy});
    // a flat axis (e.g. a perfectly straight trajectory) borrows the other axis' extent
    auto widen = [&](double lo, double hi, double other) {
        if (hi - lo < floor_width) {
            double centre = 0.5 * (lo + hi);
            double half = 0.5 * std::max(other, 1.0);
            lo = centre - half;
            hi = centre + half;
        }
        double pad = margin * (hi - lo);
        return Interval{lo - pad, hi + pad};
    };
    Interval rx = widen(min_x, max_x, wy);
    Interval ry = widen(min_y, max_y, wx);
    out.scan = scan_2d(model, frame.mean, frame.components[0], frame.components[1], rx, ry, resolution_x,
                       resolution_y);
    return out;
}

} // namespace landscape
