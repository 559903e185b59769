#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace landscape {

using Json = nlohmann::ordered_json;

/// Caller passed arguments that violate an operation's preconditions.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation produced a non-finite value or failed to converge.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, std::vector<double> point = {})
        : std::runtime_error(what), point_(std::move(point)) {}

    /// Parameter vector at which the failure happened, when known.
    const std::vector<double>& point() const noexcept { return point_; }

private:
    std::vector<double> point_;
};

/// Finite, fixed-dimension coordinate vector in model-parameter space.
class ParameterVector {
public:
    explicit ParameterVector(std::vector<double> coords);
    ParameterVector(std::initializer_list<double> coords);

    static ParameterVector zeros(std::size_t dimension);
    static ParameterVector basis(std::size_t dimension, std::size_t index, double scale = 1.0);

    std::size_t dimension() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }
    const std::vector<double>& values() const noexcept { return coords_; }

    double norm() const;
    double dot(const ParameterVector& other) const;
    /// Copy with coordinate `i` shifted by `delta`.
    ParameterVector shifted(std::size_t i, double delta) const;

    ParameterVector& operator+=(const ParameterVector& other);
    ParameterVector& operator-=(const ParameterVector& other);
    ParameterVector& operator*=(double s);

    friend ParameterVector operator+(ParameterVector a, const ParameterVector& b) { return a += b; }
    friend ParameterVector operator-(ParameterVector a, const ParameterVector& b) { return a -= b; }
    friend ParameterVector operator*(ParameterVector a, double s) { return a *= s; }
    friend ParameterVector operator*(double s, ParameterVector a) { return a *= s; }
    friend ParameterVector operator-(ParameterVector a) { return a *= -1.0; }
    friend bool operator==(const ParameterVector&, const ParameterVector&) = default;

private:
    void require_same_dimension(const ParameterVector& other) const;

    std::vector<double> coords_;
};

/// (1 - t) * a + t * b.
ParameterVector lerp(const ParameterVector& a, const ParameterVector& b, double t);

struct ModelTraits {
    /// Per-coordinate period of the loss, when it has one.
    std::optional<double> period;
    /// Repeated evaluation at one point returns bit-identical values.
    bool deterministic = true;
    /// evaluate() may be called from several threads at once.
    bool concurrent = true;
};

/// Scalar loss over a fixed-dimension parameter space.
///
/// Every call to evaluate() bumps an atomic counter; `compute` receives the
/// pre-increment counter value so stochastic models can derive per-call
/// sub-seeds from it.
class LossModel {
public:
    LossModel(std::size_t dimension, ModelTraits traits, Json descriptor);
    virtual ~LossModel() = default;

    LossModel(const LossModel&) = delete;
    LossModel& operator=(const LossModel&) = delete;

    double evaluate(const ParameterVector& point) const;

    std::size_t dimension() const noexcept { return dimension_; }
    const ModelTraits& traits() const noexcept { return traits_; }
    std::optional<double> period() const noexcept { return traits_.period; }
    bool deterministic() const noexcept { return traits_.deterministic; }
    bool concurrent() const noexcept { return traits_.concurrent; }
    const Json& descriptor() const noexcept { return descriptor_; }

    std::uint64_t eval_count() const noexcept { return count_.load(); }
    void reset_eval_count() const noexcept { count_.store(0); }

protected:
    virtual double compute(std::span<const double> theta, std::uint64_t call_index) const = 0;

private:
    std::size_t dimension_;
    ModelTraits traits_;
    Json descriptor_;
    mutable std::atomic<std::uint64_t> count_{0};
};

using ModelPtr = std::shared_ptr<const LossModel>;

/// Adapts a user-supplied callable to the LossModel contract.
class FunctionModel final : public LossModel {
public:
    using Function = std::function<double(std::span<const double>)>;

    FunctionModel(std::size_t dimension, Function fn, ModelTraits traits = {},
                  Json descriptor = Json{{"kind", "function"}});

protected:
    double compute(std::span<const double> theta, std::uint64_t) const override;

private:
    Function fn_;
};

ModelPtr make_function_model(std::size_t dimension, FunctionModel::Function fn,
                             ModelTraits traits = {},
                             Json descriptor = Json{{"kind", "function"}});

/// Evaluates every point; runs in parallel when the model allows it.
/// Output order always matches input order.
std::vector<double> evaluate_many(const LossModel& model, std::span<const ParameterVector> points);

/// Upper bound on worker threads used by evaluate_many (0 = hardware concurrency).
void set_max_threads(unsigned n);
unsigned max_threads();

enum class GradientScheme { central, forward, analytic };

struct GradientEstimator {
    GradientScheme scheme = GradientScheme::central;
    double step = 1e-3;
    std::function<ParameterVector(const ParameterVector&)> analytic;

    static GradientEstimator central(double step = 1e-3);
    static GradientEstimator forward(double step = 1e-3);
    static GradientEstimator from_callback(std::function<ParameterVector(const ParameterVector&)> fn);

    void validate() const;
};

/// Finite-difference (or callback) estimate of the loss gradient.
/// Central differences cost 2*dim evaluations, forward differences dim+1.
ParameterVector gradient(const LossModel& model, const ParameterVector& point,
                         const GradientEstimator& estimator);

struct BudgetReport {
    std::uint64_t count = 0;
    /// count / (2 * dim): the number of central-difference gradient steps
    /// that would have cost the same.
    double equivalent_gradient_steps = 0.0;
};

BudgetReport evaluation_budget_report(const LossModel& model);

std::string describe_point(std::span<const double> point);

} // namespace landscape
