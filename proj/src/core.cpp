#include "landscape/core.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace landscape {

namespace {

void require_finite(std::span<const double> coords) {
    for (double c : coords) {
        if (!std::isfinite(c)) {
            throw UsageError("parameter vector has a non-finite coordinate: " + describe_point(coords));
        }
    }
}

std::atomic<unsigned> g_max_threads{0};

} // namespace

std::string describe_point(std::span<const double> point) {
    std::ostringstream out;
    out.precision(17);
    out << '[';
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (i) out << ", ";
        out << point[i];
    }
    out << ']';
    return out.str();
}

ParameterVector::ParameterVector(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw UsageError("parameter vector must have dimension >= 1");
    require_finite(coords_);
}

ParameterVector::ParameterVector(std::initializer_list<double> coords)
    : ParameterVector(std::vector<double>(coords)) {}

ParameterVector ParameterVector::zeros(std::size_t dimension) {
    return ParameterVector(std::vector<double>(dimension, 0.0));
}

ParameterVector ParameterVector::basis(std::size_t dimension, std::size_t index, double scale) {
    if (index >= dimension) throw UsageError("basis index out of range");
    std::vector<double> v(dimension, 0.0);
    v[index] = scale;
    return ParameterVector(std::move(v));
}

double ParameterVector::norm() const {
    double s = 0.0;
    for (double c : coords_) s += c * c;
    return std::sqrt(s);
}

double ParameterVector::dot(const ParameterVector& other) const {
    require_same_dimension(other);
    double s = 0.0;
    for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * other.coords_[i];
    return s;
}

ParameterVector ParameterVector::shifted(std::size_t i, double delta) const {
    ParameterVector out = *this;
    out.coords_.at(i) += delta;
    return out;
}

void ParameterVector::require_same_dimension(const ParameterVector& other) const {
    if (other.dimension() != dimension()) {
        throw UsageError("dimension mismatch: " + std::to_string(dimension()) + " vs " +
                         std::to_string(other.dimension()));
    }
}

ParameterVector& ParameterVector::operator+=(const ParameterVector& other) {
    require_same_dimension(other);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
    require_finite(coords_);
    return *this;
}

ParameterVector& ParameterVector::operator-=(const ParameterVector& other) {
    require_same_dimension(other);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
    require_finite(coords_);
    return *this;
}

ParameterVector& ParameterVector::operator*=(double s) {
    for (double& c : coords_) c *= s;
    require_finite(coords_);
    return *this;
}

ParameterVector lerp(const ParameterVector& a, const ParameterVector& b, double t) {
    if (a.dimension() != b.dimension()) throw UsageError("lerp: dimension mismatch");
    std::vector<double> out(a.dimension());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - t) * a[i] + t * b[i];
    return ParameterVector(std::move(out));
}

LossModel::LossModel(std::size_t dimension, ModelTraits traits, Json descriptor)
    : dimension_(dimension), traits_(traits), descriptor_(std::move(descriptor)) {
    if (dimension_ == 0) throw UsageError("loss model dimension must be positive");
    if (traits_.period && !(*traits_.period > 0.0)) throw UsageError("period must be positive");
}

double LossModel::evaluate(const ParameterVector& point) const {
    if (point.dimension() != dimension_) {
        throw UsageError("evaluate: point has dimension " + std::to_string(point.dimension()) +
                         ", model expects " + std::to_string(dimension_));
    }
    std::uint64_t index = count_.fetch_add(1);
    double value = compute(point.coords(), index);
    if (!std::isfinite(value)) {
        throw NumericalError("non-finite loss at " + describe_point(point.coords()), point.values());
    }
    return value;
}

FunctionModel::FunctionModel(std::size_t dimension, Function fn, ModelTraits traits, Json descriptor)
    : LossModel(dimension, traits, std::move(descriptor)), fn_(std::move(fn)) {
    if (!fn_) throw UsageError("function model needs a callable");
}

double FunctionModel::compute(std::span<const double> theta, std::uint64_t) const { return fn_(theta); }

ModelPtr make_function_model(std::size_t dimension, FunctionModel::Function fn, ModelTraits traits,
                             Json descriptor) {
    return std::make_shared<FunctionModel>(dimension, std::move(fn), traits, std::move(descriptor));
}

void set_max_threads(unsigned n) { g_max_threads.store(n); }

unsigned max_threads() {
    unsigned n = g_max_threads.load();
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

std::vector<double> evaluate_many(const LossModel& model, std::span<const ParameterVector> points) {
    std::vector<double> out(points.size());
    unsigned workers = model.concurrent() ? std::min<std::size_t>(max_threads(), points.size()) : 1;
    if (workers <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i) out[i] = model.evaluate(points[i]);
        return out;
    }

    // static interleaved partition; each slot is written by exactly one worker
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::size_t> error_index(workers, points.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < points.size(); i += workers) {
                try {
                    out[i] = model.evaluate(points[i]);
                } catch (...) {
                    errors[w] = std::current_exception();
                    error_index[w] = i;
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();

    // report the failure with the lowest index so errors are order-independent
    std::size_t best = points.size();
    std::exception_ptr first;
    for (unsigned w = 0; w < workers; ++w) {
        if (errors[w] && error_index[w] < best) {
            best = error_index[w];
            first = errors[w];
        }
    }
    if (first) std::rethrow_exception(first);
    return out;
}

GradientEstimator GradientEstimator::central(double step) {
    GradientEstimator e;
    e.scheme = GradientScheme::central;
    e.step = step;
    e.validate();
    return e;
}

GradientEstimator GradientEstimator::forward(double step) {
    GradientEstimator e;
    e.scheme = GradientScheme::forward;
    e.step = step;
    e.validate();
    return e;
}

GradientEstimator GradientEstimator::from_callback(std::function<ParameterVector(const ParameterVector&)> fn) {
    GradientEstimator e;
    e.scheme = GradientScheme::analytic;
    e.analytic = std::move(fn);
    e.validate();
    return e;
}

void GradientEstimator::validate() const {
    if (!(step > 0.0) || !std::isfinite(step)) throw UsageError("gradient step must be positive");
    if (scheme == GradientScheme::analytic && !analytic) {
        throw UsageError("analytic gradient scheme requires a callback");
    }
}

ParameterVector gradient(const LossModel& model, const ParameterVector& point,
                         const GradientEstimator& estimator) {
    estimator.validate();
    const std::size_t dim = model.dimension();
    if (point.dimension() != dim) throw UsageError("gradient: dimension mismatch");

    if (estimator.scheme == GradientScheme::analytic) {
        ParameterVector g = estimator.analytic(point);
        if (g.dimension() != dim) throw UsageError("analytic gradient callback returned wrong dimension");
        return g;
    }

    const double h = estimator.step;
    std::vector<ParameterVector> probes;
    if (estimator.scheme == GradientScheme::central) {
        probes.reserve(2 * dim);
        for (std::size_t i = 0; i < dim; ++i) {
            probes.push_back(point.shifted(i, h));
            probes.push_back(point.shifted(i, -h));
        }
    } else {
        probes.reserve(dim + 1);
        probes.push_back(point);
        for (std::size_t i = 0; i < dim; ++i) probes.push_back(point.shifted(i, h));
    }
    std::vector<double> values = evaluate_many(model, probes);

    std::vector<double> g(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        g[i] = estimator.scheme == GradientScheme::central
                   ? (values[2 * i] - values[2 * i + 1]) / (2.0 * h)
                   : (values[i + 1] - values[0]) / h;
    }
    return ParameterVector(std::move(g));
}

BudgetReport evaluation_budget_report(const LossModel& model) {
    BudgetReport r;
    r.count = model.eval_count();
    r.equivalent_gradient_steps = static_cast<double>(r.count) / (2.0 * static_cast<double>(model.dimension()));
    return r;
}

} // namespace landscape
