#include "landscape/neb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace landscape {

Chain::Chain(std::vector<ParameterVector> pivots) : pivots_(std::move(pivots)) {
    if (pivots_.size() < 3) throw UsageError("chain needs at least 3 pivots");
    for (const auto& p : pivots_)
        if (p.dimension() != pivots_.front().dimension()) throw UsageError("chain pivots differ in dimension");
}

Chain Chain::with_interior(std::vector<ParameterVector> interior) const {
    std::vector<ParameterVector> all;
    all.reserve(interior.size() + 2);
    all.push_back(pivots_.front());
    for (auto& p : interior) all.push_back(std::move(p));
    all.push_back(pivots_.back());
    return Chain(std::move(all));
}

std::vector<double> Chain::segment_lengths() const {
    std::vector<double> out;
    out.reserve(pivots_.size() - 1);
    for (std::size_t i = 0; i + 1 < pivots_.size(); ++i) out.push_back((pivots_[i + 1] - pivots_[i]).norm());
    return out;
}

double Chain::length() const {
    auto s = segment_lengths();
    return std::accumulate(s.begin(), s.end(), 0.0);
}

void NebConfig::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw UsageError("neb: learning_rate must be > 0");
    if (iterations < 1) throw UsageError("neb: iterations must be >= 1");
    if (cycles < 1) throw UsageError("neb: cycles must be >= 1");
    if (!(spring_constant >= 0.0) || !std::isfinite(spring_constant)) {
        throw UsageError("neb: spring_constant must be >= 0");
    }
    if (!std::isfinite(relative_insert_tolerance) || !std::isfinite(absolute_insert_tolerance)) {
        throw UsageError("neb: insertion tolerances must be finite");
    }
    if (max_new_pivots < 1) throw UsageError("neb: max_new_pivots must be >= 1");
}

Chain init_chain(const ParameterVector& point_a, const ParameterVector& point_b, std::size_t n_pivots) {
    if (n_pivots < 3) throw UsageError("init_chain: n_pivots must be >= 3");
    if (point_a.dimension() != point_b.dimension()) throw UsageError("init_chain: dimension mismatch");
    std::vector<ParameterVector> pivots;
    pivots.reserve(n_pivots);
    pivots.push_back(point_a);
    for (std::size_t i = 1; i + 1 < n_pivots; ++i) {
        pivots.push_back(lerp(point_a, point_b, static_cast<double>(i) / static_cast<double>(n_pivots - 1)));
    }
    pivots.push_back(point_b);
    return Chain(std::move(pivots));
}

std::vector<Direction> chain_tangents(const Chain& chain, const std::vector<double>& losses) {
    if (losses.size() != chain.size()) throw UsageError("chain_tangents: one loss per pivot required");
    std::vector<Direction> out;
    out.reserve(chain.size() - 2);
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
        ParameterVector diff = losses[i + 1] > losses[i - 1] ? chain[i + 1] - chain[i] : chain[i] - chain[i - 1];
        double n = diff.norm();
        if (!(n > 0.0)) {
            throw NumericalError("chain_tangents: zero-length segment at pivot " + std::to_string(i),
                                 chain[i].values());
        }
        out.push_back(Direction(diff * (1.0 / n)));
    }
    return out;
}

std::vector<double> evaluate_pivots(const LossModel& model, const Chain& chain) {
    return evaluate_many(model, chain.pivots());
}

Chain neb_step(const Chain& chain, const LossModel& model, const GradientEstimator& gradient_estimator,
               const NebConfig& config) {
    config.validate();
    if (chain.dimension() != model.dimension()) throw UsageError("neb_step: dimension mismatch");
    const std::vector<double> losses = evaluate_pivots(model, chain);
    const std::vector<Direction> tangents = chain_tangents(chain, losses);

    std::vector<ParameterVector> interior;
    interior.reserve(chain.size() - 2);
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
        ParameterVector g = [&] {
            try {
                return gradient(model, chain[i], gradient_estimator);
            } catch (const NumericalError& e) {
                throw NumericalError("neb_step: gradient failed at pivot " + std::to_string(i) + ": " + e.what(),
                                     chain[i].values());
            }
        }();
        const Direction& tau = tangents[i - 1];
        ParameterVector force = -(g - g.dot(tau.vector()) * tau.vector());
        if (config.spring_constant > 0.0) {
            force += config.spring_constant * (chain[i + 1] - chain[i] * 2.0 + chain[i - 1]);
        }
        interior.push_back(chain[i] + config.learning_rate * force);
    }
    return chain.with_interior(std::move(interior));
}

Chain redistribute_chain(const Chain& chain) {
    const std::vector<double> seg = chain.segment_lengths();
    std::vector<double> cumulative(seg.size() + 1, 0.0);
    for (std::size_t i = 0; i < seg.size(); ++i) cumulative[i + 1] = cumulative[i] + seg[i];
    const double total = cumulative.back();
    if (!(total > 0.0)) throw UsageError("redistribute_chain: path has zero length");

    const std::size_t n_intervals = chain.size() - 1;
    std::vector<ParameterVector> interior;
    interior.reserve(chain.size() - 2);
    std::size_t s = 0;
    for (std::size_t k = 1; k < n_intervals; ++k) {
        double target = total * static_cast<double>(k) / static_cast<double>(n_intervals);
        while (s + 1 < seg.size() && cumulative[s + 1] < target) ++s;
        while (s + 1 < seg.size() && seg[s] == 0.0) ++s;
        double frac = seg[s] > 0.0 ? (target - cumulative[s]) / seg[s] : 0.0;
        frac = std::clamp(frac, 0.0, 1.0);
        interior.push_back(lerp(chain[s], chain[s + 1], frac));
    }
    return chain.with_interior(std::move(interior));
}

std::vector<Chain> run_neb(const Chain& chain, const LossModel& model, const GradientEstimator& gradient_estimator,
                           const NebConfig& config) {
    config.validate();
    std::vector<Chain> history;
    history.reserve(config.iterations + 1);
    history.push_back(chain);
    for (std::size_t it = 0; it < config.iterations; ++it) {
        Chain next = neb_step(history.back(), model, gradient_estimator, config);
        if (config.spring_constant == 0.0) next = redistribute_chain(next);
        history.push_back(std::move(next));
    }
    return history;
}

Chain insert_pivots(const Chain& chain, const LossModel& model, const NebConfig& config) {
    const std::vector<double> losses = evaluate_pivots(model, chain);
    std::vector<ParameterVector> midpoints;
    midpoints.reserve(chain.size() - 1);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) midpoints.push_back(lerp(chain[i], chain[i + 1], 0.5));
    const std::vector<double> mid_losses = evaluate_many(model, midpoints);

    struct Candidate {
        std::size_t segment;
        double deviation;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        double interpolated = 0.5 * (losses[i] + losses[i + 1]);
        double deviation = std::abs(mid_losses[i] - interpolated);
        double tolerance = config.absolute_insert_tolerance + config.relative_insert_tolerance * std::abs(interpolated);
        if (deviation > tolerance) candidates.push_back({i, deviation});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.deviation > b.deviation; });
    if (candidates.size() > config.max_new_pivots) candidates.resize(config.max_new_pivots);
    if (candidates.empty()) return chain;

    std::vector<bool> split(chain.size() - 1, false);
    for (const auto& c : candidates) split[c.segment] = true;
    std::vector<ParameterVector> pivots;
    pivots.reserve(chain.size() + candidates.size());
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        pivots.push_back(chain[i]);
        if (split[i]) pivots.push_back(midpoints[i]);
    }
    pivots.push_back(chain.back());
    return Chain(std::move(pivots));
}

std::vector<Chain> run_auto_neb(const Chain& chain, const LossModel& model,
                                const GradientEstimator& gradient_estimator, const NebConfig& config) {
    config.validate();
    std::vector<Chain> per_cycle;
    per_cycle.push_back(chain);
    Chain current = chain;
    for (std::size_t cycle = 0; cycle < config.cycles; ++cycle) {
        if (cycle > 0) current = insert_pivots(current, model, config);
        current = run_neb(current, model, gradient_estimator, config).back();
        per_cycle.push_back(current);
    }
    return per_cycle;
}

Scan1DResult chain_loss_profile(const Chain& chain, const LossModel& model, std::size_t samples_per_segment) {
    if (samples_per_segment < 1) throw UsageError("chain_loss_profile: samples_per_segment must be >= 1");
    const std::vector<double> seg = chain.segment_lengths();
    const double total = std::accumulate(seg.begin(), seg.end(), 0.0);
    if (!(total > 0.0)) throw UsageError("chain_loss_profile: path has zero length");

    std::vector<double> ts;
    std::vector<ParameterVector> points;
    double walked = 0.0;
    for (std::size_t i = 0; i < seg.size(); ++i) {
        if (seg[i] > 0.0) {
            for (std::size_t k = 0; k < samples_per_segment; ++k) {
                double frac = static_cast<double>(k) / static_cast<double>(samples_per_segment);
                ts.push_back((walked + frac * seg[i]) / total);
                points.push_back(lerp(chain[i], chain[i + 1], frac));
            }
        }
        walked += seg[i];
    }
    ts.push_back(1.0);
    points.push_back(chain.back());
    std::vector<double> values = evaluate_many(model, points);

    ParameterVector span = chain.back() - chain.front();
    if (!(span.norm() > 0.0)) {
        for (std::size_t i = 0; i < seg.size(); ++i)
            if (seg[i] > 0.0) {
                span = chain[i + 1] - chain[i];
                break;
            }
    }
    return Scan1DResult{std::move(ts), std::move(values), chain.front(), Direction(span), ScanKind::piecewise};
}

} // namespace landscape
