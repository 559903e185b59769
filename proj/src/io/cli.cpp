#include "landscape/io/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "landscape/geometric.hpp"
#include "landscape/hessian.hpp"
#include "landscape/io/serialize.hpp"
#include "landscape/io/svg.hpp"
#include "landscape/neb.hpp"
#include "landscape/pca.hpp"
#include "landscape/random.hpp"
#include "landscape/scans.hpp"
#include "landscape/testbed/models.hpp"
#include "landscape/testbed/optimizers.hpp"

namespace landscape::io {

namespace fs = std::filesystem;
using namespace landscape::testbed;

namespace {

std::string read_text(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError(std::string("cannot read ") + what + " " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PauliSum transverse_field_ising(std::size_t n) {
    std::vector<PauliTerm> terms;
    const std::size_t bonds = n == 2 ? 1 : (n > 2 ? n : 0);
    for (std::size_t i = 0; i < bonds; ++i) {
        std::string ops(n, 'I');
        ops[i] = 'Z';
        ops[(i + 1) % n] = 'Z';
        terms.push_back({-1.0, ops});
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::string ops(n, 'I');
        ops[i] = 'X';
        terms.push_back({-1.0, ops});
    }
    return PauliSum(n, std::move(terms));
}

} // namespace

ModelPtr build_model(const ModelSpec& spec, std::uint64_t seed) {
    std::string kind = spec.kind;
    if (kind.empty()) {
        if (!spec.graph_file.empty()) kind = "qaoa";
        else if (!spec.dist_file.empty()) kind = "qcbm";
        else if (!spec.hamiltonian_file.empty()) kind = "pauli";
        else throw UsageError("missing required: --model");
    }
    if (kind == "sombrero") return sombrero_loss(spec.nu, spec.dim);
    if (kind == "constant") return constant_loss(spec.value, spec.dim);
    if (kind == "quadratic") {
        std::vector<double> diag = spec.diagonal.empty() ? std::vector<double>(spec.dim, 1.0) : spec.diagonal;
        Matrix h(diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) h(i, i) = diag[i];
        return quadratic_loss(h);
    }
    if (kind == "qaoa") {
        WeightedGraph g = spec.graph_file.empty()
                              ? random_regular_graph(spec.vertices, spec.degree, parse_weight_mode(spec.weights),
                                                     spec.graph_seed)
                              : read_graph(spec.graph_file);
        return qaoa_maxcut_loss(g, spec.layers);
    }
    if (kind == "qcbm") {
        DiscreteDistribution target = spec.dist_file.empty() ? DiscreteDistribution::random(spec.qubits, spec.graph_seed)
                                                             : read_distribution(spec.dist_file);
        auto exact = qcbm_kl_loss(hardware_efficient_ansatz(target.n_qubits(), spec.ansatz_layers), target,
                                  spec.kl_epsilon);
        if (spec.shots > 0) return with_shot_noise(std::shared_ptr<const QcbmKlLoss>(exact), spec.shots, seed);
        return exact;
    }
    if (kind == "pauli") {
        PauliSum h = spec.hamiltonian_file.empty()
                         ? transverse_field_ising(spec.qubits)
                         : PauliSum::parse(read_text(spec.hamiltonian_file, "hamiltonian file"));
        auto exact = pauli_expectation_loss(hardware_efficient_ansatz(h.n_qubits(), spec.ansatz_layers), h);
        if (spec.shots > 0)
            return with_shot_noise(std::shared_ptr<const PauliExpectationLoss>(exact), spec.shots, seed);
        return exact;
    }
    throw UsageError("unknown model kind: " + kind);
}

namespace {

class Runner {
public:
    Runner(const ExperimentConfig& cfg, std::ostream& log) : cfg_(cfg), log_(log), out_(cfg.out_dir) {}

    void run() {
        const auto& op = cfg_.operation;
        if (op == "demo") return demo();
        ModelPtr model = build_model(cfg_.model, cfg_.seed);
        if (op == "scan1d") scan1d(*model);
        else if (op == "scan2d") scan2d(*model);
        else if (op == "eigen-ratio-scan") eigen_ratio(*model);
        else if (op == "hessian") hessian(*model, "hessian", origin(*model));
        else if (op == "optimize") optimize(*model);
        else if (op == "pca-scan") pca_scan(*model);
        else if (op == "neb") neb(*model, "neb", point("point_a", cfg_.params.point_a, *model),
                                  point("point_b", cfg_.params.point_b, *model), false);
        else if (op == "autoneb") neb(*model, "autoneb", point("point_a", cfg_.params.point_a, *model),
                                      point("point_b", cfg_.params.point_b, *model), true);
        else throw UsageError("unknown operation: " + op);
        report(op, *model);
        if (!deferred_error_.empty()) throw NumericalError(deferred_error_);
    }

private:
    const ExperimentConfig& cfg_;
    std::ostream& log_;
    fs::path out_;
    std::string deferred_error_;

    // ---- provenance and emission helpers

    Provenance prov(const LossModel& model, const std::string& stage = {}) const {
        Json extra = provenance_config(cfg_);
        if (!stage.empty()) extra["stage"] = stage;
        return provenance_of(model, cfg_.seed, std::move(extra));
    }

    static Json svg_metadata(const Provenance& p) {
        return Json{{"spec_version", kFormatVersion}, {"seed", p.seed}, {"model", p.model}, {"parameters", p.extra}};
    }

    static void append(Json& doc, const Provenance& p) {
        doc["model"] = p.model;
        doc["seed"] = p.seed;
        doc["eval_count"] = p.eval_count;
        doc["parameters"] = p.extra;
        doc["spec_version"] = kFormatVersion;
    }

    void report(const std::string& label, const LossModel& model) const {
        const BudgetReport b = evaluation_budget_report(model);
        log_ << "[" << label << "] evaluations: " << b.count << " (" << format_double(b.equivalent_gradient_steps)
             << " central-difference gradient steps at dimension " << model.dimension() << ")\n";
    }

    void emit_grid(const std::string& name, const Scan2DResult& scan, const Provenance& p,
                   const std::vector<Overlay>& overlays = {}, Json extra_fields = Json::object()) const {
        if (cfg_.wants("json")) {
            Json doc = to_json(scan, p);
            for (auto& [k, v] : extra_fields.items()) doc[k] = v;
            write_json(doc, out_ / (name + ".json"));
        }
        if (cfg_.wants("csv")) emit_scan_csv(scan, out_ / (name + ".csv"));
        if (cfg_.wants("svg")) render_heatmap_svg(scan, cfg_.render, overlays, out_ / (name + ".svg"), svg_metadata(p));
    }

    void emit_lines(const std::string& name, Json doc, const std::vector<Scan1DResult>& series,
                    const std::vector<std::string>& labels, const Provenance& p) const {
        if (cfg_.wants("json")) {
            append(doc, p);
            write_json(doc, out_ / (name + ".json"));
        }
        if (cfg_.wants("csv")) {
            if (series.size() == 1) emit_scan_csv(series.front(), out_ / (name + ".csv"));
            else
                for (std::size_t k = 0; k < series.size(); ++k)
                    emit_scan_csv(series[k], out_ / (name + "_" + std::to_string(k) + ".csv"));
        }
        if (cfg_.wants("svg") && !series.empty())
            render_line_svg(series, labels, out_ / (name + ".svg"), cfg_.render, svg_metadata(p));
    }

    // ---- parameter helpers

    ParameterVector point(const char* field, const std::vector<double>& coords, const LossModel& model) const {
        if (coords.empty()) throw UsageError(std::string("missing required: --") + dashed(field));
        if (coords.size() != model.dimension())
            throw UsageError(std::string("--") + dashed(field) + " has " + std::to_string(coords.size()) +
                             " coordinates, model dimension is " + std::to_string(model.dimension()));
        return ParameterVector(coords);
    }

    static std::string dashed(std::string s) {
        std::replace(s.begin(), s.end(), '_', '-');
        return s;
    }

    ParameterVector origin(const LossModel& model) const {
        if (cfg_.params.origin.empty()) return ParameterVector::zeros(model.dimension());
        return point("origin", cfg_.params.origin, model);
    }

    struct Plane {
        ParameterVector origin;
        Direction dx;
        Direction dy;
    };

    Plane random_plane(const LossModel& model) const {
        const double n = cfg_.params.dir_norm;
        if (!(n > 0.0) || !std::isfinite(n)) throw UsageError("--dir-norm must be positive");
        Direction dx = random_unit_direction(model.dimension(), cfg_.seed).scaled_to(n);
        Direction dy = orthonormal_complement(dx, mix_seed(cfg_.seed, 1)).scaled_to(n);
        return Plane{origin(model), dx, dy};
    }

    bool have_endpoints() const { return !cfg_.params.point_a.empty() || !cfg_.params.point_b.empty(); }

    NebConfig neb_config() const {
        NebConfig c;
        c.learning_rate = cfg_.params.neb_learning_rate;
        c.iterations = cfg_.params.neb_iterations;
        c.cycles = cfg_.params.cycles;
        c.spring_constant = cfg_.params.spring;
        c.relative_insert_tolerance = cfg_.params.insert_rel_tol;
        c.absolute_insert_tolerance = cfg_.params.insert_abs_tol;
        c.max_new_pivots = cfg_.params.max_new_pivots;
        return c;
    }

    HessianConfig hessian_config() const {
        HessianConfig c;
        if (cfg_.params.hessian == "exact") c.method = HessianConfig::Method::exact;
        else if (cfg_.params.hessian == "spsa") c.method = HessianConfig::Method::spsa;
        else throw UsageError("--hessian must be exact or spsa");
        c.step = cfg_.params.hessian_step;
        c.repetitions = cfg_.params.repetitions;
        c.eps = cfg_.params.hessian_eps;
        c.seed = cfg_.seed;
        return c;
    }

    // ---- operations

    void scan1d(const LossModel& model) {
        const auto& pr = cfg_.params;
        Scan1DResult r = have_endpoints()
                             ? scan_1d_interpolation(model, point("point_a", pr.point_a, model),
                                                     point("point_b", pr.point_b, model), pr.range_x, pr.points)
                             : scan_1d_linear(model, origin(model),
                                              random_unit_direction(model.dimension(), cfg_.seed).scaled_to(pr.dir_norm),
                                              pr.range_x, pr.points);
        const Provenance p = prov(model);
        if (cfg_.wants("json")) emit_scan_json(r, p, out_ / "scan1d.json");
        if (cfg_.wants("csv")) emit_scan_csv(r, out_ / "scan1d.csv");
        if (cfg_.wants("svg")) render_line_svg({r}, {"loss"}, out_ / "scan1d.svg", cfg_.render, svg_metadata(p));
    }

    void scan2d(const LossModel& model) {
        const auto& pr = cfg_.params;
        Scan2DResult r = [&] {
            if (have_endpoints())
                return scan_2d_interpolation(model, point("point_a", pr.point_a, model),
                                             point("point_b", pr.point_b, model), cfg_.seed, pr.range_x, pr.range_y,
                                             pr.res_x, pr.res_y);
            Plane pl = random_plane(model);
            return scan_2d(model, pl.origin, pl.dx, pl.dy, pr.range_x, pr.range_y, pr.res_x, pr.res_y);
        }();
        emit_grid("scan2d", r, prov(model));
    }

    void eigen_ratio(const LossModel& model) {
        const auto& pr = cfg_.params;
        Plane pl = random_plane(model);
        Scan2DResult r = eigenvalue_ratio_scan(model, pl.origin, pl.dx, pl.dy, pr.range_x, pr.range_y, pr.res_x,
                                               pr.res_y, hessian_config());
        emit_grid("eigen_ratio_scan", r, prov(model), {}, Json{{"undefined_value", kUndefinedRatio}});
    }

    void hessian(const LossModel& model, const std::string& name, const ParameterVector& at,
                 HessianConfig config, Interval scan_range, std::size_t scan_points) {
        HessianResult h = compute_hessian(model, at, config);
        std::vector<std::size_t> which(h.eigenvalues.size());
        for (std::size_t k = 0; k < which.size(); ++k) which[k] = k;
        auto scans = eigenvector_scans(h, model, which, scan_range, scan_points);
        Json doc = to_json(h);
        Json js = Json::array();
        std::vector<Scan1DResult> series;
        std::vector<std::string> labels;
        for (const auto& s : scans) {
            js.push_back(Json{{"index", s.index}, {"eigenvalue", s.eigenvalue}, {"ts", s.scan.ts},
                              {"values", s.scan.values}});
            series.push_back(s.scan);
            labels.push_back("lambda_" + std::to_string(s.index) + " = " + format_double(s.eigenvalue));
        }
        doc["eigenvector_scans"] = js;
        emit_lines(name, std::move(doc), series, labels, prov(model, name));
    }

    void hessian(const LossModel& model, const std::string& name, const ParameterVector& at) {
        hessian(model, name, at, hessian_config(), cfg_.params.range_x, cfg_.params.points);
    }

    std::vector<OptimizationTrace> multistart(const LossModel& model, std::size_t starts, double lr,
                                              std::size_t iterations) {
        const auto& pr = cfg_.params;
        if (starts == 0) throw UsageError("--starts must be >= 1");
        if (!(pr.init_range > 0.0)) throw UsageError("--init-range must be positive");
        std::vector<OptimizationTrace> runs;
        for (std::size_t k = 0; k < starts; ++k) {
            ParameterVector start = [&] {
                if (starts == 1 && !pr.origin.empty()) return origin(model);
                Rng rng = Rng::derive(cfg_.seed, k);
                std::vector<double> c(model.dimension());
                for (double& x : c) x = rng.uniform(-pr.init_range, pr.init_range);
                return ParameterVector(std::move(c));
            }();
            if (pr.optimizer == "gd")
                runs.push_back(gradient_descent(model, GradientEstimator::central(pr.grad_step), start, lr, iterations));
            else if (pr.optimizer == "spsa")
                runs.push_back(spsa_optimize(model, start, lr, iterations, pr.spsa_directions, pr.spsa_eps,
                                             mix_seed(cfg_.seed, k)));
            else
                throw UsageError("--optimizer must be gd or spsa");
            if (runs.back().error && deferred_error_.empty())
                deferred_error_ = "run " + std::to_string(k) + " stopped early: " + *runs.back().error;
        }
        return runs;
    }

    static Json runs_json(const std::vector<OptimizationTrace>& runs, bool with_trajectories) {
        Json arr = Json::array();
        for (const auto& r : runs) {
            Json j{{"start", r.trajectory.front().values()},
                   {"final_point", r.final_point().values()},
                   {"final_loss", r.final_loss()},
                   {"losses", r.losses}};
            if (with_trajectories) {
                Json t = Json::array();
                for (const auto& p : r.trajectory) t.push_back(p.values());
                j["trajectory"] = t;
            }
            j["error"] = r.error ? Json(*r.error) : Json(nullptr);
            arr.push_back(std::move(j));
        }
        return arr;
    }

    static Scan1DResult loss_curve(const OptimizationTrace& r) {
        std::vector<double> ts(r.losses.size());
        for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = static_cast<double>(i);
        const ParameterVector& o = r.trajectory.front();
        ParameterVector d = r.final_point() - o;
        if (d.norm() == 0.0) d = ParameterVector::basis(o.dimension(), 0);
        return Scan1DResult{ts, r.losses, o, Direction(d), ScanKind::piecewise};
    }

    void optimize(const LossModel& model) {
        const auto& pr = cfg_.params;
        auto runs = multistart(model, pr.starts, pr.learning_rate, pr.iterations);
        Json doc{{"kind", "optimization"}, {"optimizer", pr.optimizer}, {"runs", runs_json(runs, true)}};
        Json finals = Json::array();
        for (const auto& r : runs) finals.push_back(r.final_loss());
        doc["final_losses"] = finals;
        std::vector<Scan1DResult> curves;
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < runs.size(); ++k) {
            curves.push_back(loss_curve(runs[k]));
            labels.push_back("run " + std::to_string(k));
        }
        emit_lines("optimize", std::move(doc), curves, labels, prov(model));
    }

    std::vector<std::vector<ParameterVector>> trajectories(const LossModel& model,
                                                           const std::vector<OptimizationTrace>& runs) const {
        std::vector<std::vector<ParameterVector>> t;
        for (const auto& r : runs) {
            if (auto period = model.period())
                t.push_back(wrap_trajectory(r.trajectory.front(), r.trajectory, *period));
            else
                t.push_back(r.trajectory);
        }
        return t;
    }

    void emit_pca(const std::string& name, const LossModel& model, const std::vector<std::vector<ParameterVector>>& trajs,
                  std::size_t res_x, std::size_t res_y, double margin) {
        PrincipalFrame frame = fit_joint_principal_frame(trajs, std::min<std::size_t>(2, model.dimension()));
        PcaScanResult r = scan_pca_plane(frame, model, trajs, margin, res_x, res_y);
        std::vector<Overlay> overlays;
        Json ov = Json::array();
        for (std::size_t k = 0; k < r.overlays.size(); ++k) {
            overlays.push_back(Overlay{r.overlays[k], "trajectory " + std::to_string(k)});
            Json line = Json::array();
            for (const auto& [a, b] : r.overlays[k]) line.push_back(Json::array({a, b}));
            ov.push_back(line);
        }
        const Provenance p = prov(model, name);
        emit_grid(name, r.scan, p, overlays, Json{{"frame", to_json(frame)}, {"overlays", ov}});
        if (cfg_.wants("json")) {
            Json f = to_json(frame);
            append(f, p);
            write_json(f, out_ / (name + "_frame.json"));
        }
    }

    void pca_scan(const LossModel& model) {
        const auto& pr = cfg_.params;
        auto runs = multistart(model, pr.starts, pr.learning_rate, pr.iterations);
        emit_pca("pca_scan", model, trajectories(model, runs), pr.res_x, pr.res_y, pr.margin);
    }

    void neb(const LossModel& model, const std::string& name, const ParameterVector& a, const ParameterVector& b,
             bool automatic, NebConfig config, std::size_t pivots) {
        config.validate();
        Chain initial = init_chain(a, b, pivots);
        const auto estimator = GradientEstimator::central(cfg_.params.grad_step);
        std::vector<Chain> history =
            automatic ? run_auto_neb(initial, model, estimator, config) : run_neb(initial, model, estimator, config);
        const std::size_t samples = std::max<std::size_t>(1, cfg_.params.profile_samples);
        Scan1DResult before = chain_loss_profile(history.front(), model, samples);
        Scan1DResult after = chain_loss_profile(history.back(), model, samples);
        const double peak = *std::max_element(after.values.begin(), after.values.end());
        Json doc = to_json(history);
        doc["kind"] = automatic ? "autoneb" : "neb";
        doc["final_pivot_losses"] = evaluate_pivots(model, history.back());
        doc["profile"] = Json{{"ts", after.ts}, {"values", after.values}};
        doc["max_path_loss"] = peak;
        emit_lines(name, std::move(doc), {before, after}, {"initial path", "relaxed path"}, prov(model, name));
    }

    void neb(const LossModel& model, const std::string& name, const ParameterVector& a, const ParameterVector& b,
             bool automatic) {
        neb(model, name, a, b, automatic, neb_config(), cfg_.params.pivots);
    }

    // ---- demos

    void demo() {
        if (cfg_.demo == "sombrero-pipeline") return sombrero_pipeline();
        throw UsageError("unknown demo: " + cfg_.demo + " (available: sombrero-pipeline)");
    }

    ModelPtr demo_sombrero() const {
        ModelSpec spec = cfg_.model;
        if (spec.kind.empty()) spec.kind = "sombrero";
        if (spec.kind != "sombrero") throw UsageError("sombrero-pipeline demo needs --model sombrero");
        return build_model(spec, cfg_.seed);
    }

    void sombrero_pipeline() {
        constexpr std::size_t kStarts = 100;
        constexpr std::size_t kIterations = 150;
        constexpr double kLearningRate = 0.05;
        const double nu = cfg_.model.nu;

        // multi-start gradient descent
        ModelPtr m = demo_sombrero();
        auto runs = multistart(*m, kStarts, kLearningRate, kIterations);
        {
            std::vector<double> finals;
            for (const auto& r : runs) finals.push_back(r.final_loss());
            // each final loss is attributed to the nearest radial minimum level
            std::vector<double> level_loss, level_radius;
            for (std::size_t k = 0; k <= 6; ++k) {
                const double r = k == 0 ? 0.0 : sombrero_critical_radius(nu, 2 * k);
                level_radius.push_back(r);
                level_loss.push_back(sombrero_radial(nu, r));
            }
            std::vector<std::size_t> level_count(level_loss.size(), 0);
            std::size_t off_level = 0;
            for (double f : finals) {
                std::size_t nearest = 0;
                for (std::size_t k = 1; k < level_loss.size(); ++k)
                    if (std::abs(f - level_loss[k]) < std::abs(f - level_loss[nearest])) nearest = k;
                if (std::abs(f - level_loss[nearest]) <= 0.02) ++level_count[nearest];
                else ++off_level;
            }
            Json levels = Json::array();
            for (std::size_t k = 0; k < level_loss.size(); ++k)
                levels.push_back(Json{{"radius", level_radius[k]}, {"loss", level_loss[k]}, {"count", level_count[k]}});
            constexpr std::size_t kBins = 26;
            std::vector<std::size_t> counts(kBins, 0);
            std::vector<double> edges(kBins + 1);
            for (std::size_t b = 0; b <= kBins; ++b) edges[b] = 0.05 * static_cast<double>(b);
            for (double f : finals) {
                auto b = static_cast<std::size_t>(std::clamp(f / 0.05, 0.0, static_cast<double>(kBins - 1)));
                ++counts[b];
            }
            std::vector<double> sorted = finals;
            std::sort(sorted.begin(), sorted.end());
            std::vector<double> rank(sorted.size());
            for (std::size_t i = 0; i < rank.size(); ++i) rank[i] = static_cast<double>(i);
            Scan1DResult sorted_curve{rank, sorted, ParameterVector::zeros(m->dimension()),
                                      Direction(ParameterVector::basis(m->dimension(), 0)), ScanKind::piecewise};
            Json doc{{"kind", "multistart"},   {"learning_rate", kLearningRate}, {"iterations", kIterations},
                     {"final_losses", finals}, {"histogram", Json{{"edges", edges}, {"counts", counts}}},
                     {"levels", levels},       {"off_level", off_level},
                     {"runs", runs_json(runs, false)}};
            emit_lines("multistart", std::move(doc), {sorted_curve}, {"final loss (sorted)"}, prov(*m, "multistart"));
            report("multistart", *m);
        }

        // interpolation scans between the best run and a run that ended on another level
        std::size_t best = 0;
        for (std::size_t k = 1; k < runs.size(); ++k)
            if (runs[k].final_loss() < runs[best].final_loss()) best = k;
        std::size_t other = best == 0 ? 1 : 0;
        for (std::size_t k = 0; k < runs.size(); ++k) {
            if (std::abs(runs[k].final_loss() - runs[best].final_loss()) > 0.02) {
                other = k;
                break;
            }
        }
        {
            ModelPtr mi = demo_sombrero();
            const auto& a = runs[best].final_point();
            const auto& b = runs[other].final_point();
            Scan1DResult s1 = scan_1d_interpolation(*mi, a, b, {-0.5, 1.5}, 100);
            emit_lines("interpolation_1d", to_json(s1, Provenance{}), {s1}, {"loss"}, prov(*mi, "interpolation_1d"));
            Scan2DResult s2 = scan_2d_interpolation(*mi, a, b, cfg_.seed, {-0.5, 1.5}, {-0.5, 0.5}, 50, 50);
            emit_grid("interpolation_2d", s2, prov(*mi, "interpolation_2d"), {},
                      Json{{"orthogonal_direction_scale", "norm_of_displacement"}});
            report("interpolation", *mi);
        }

        // PCA scan of the best trajectory
        {
            ModelPtr mp = demo_sombrero();
            emit_pca("pca_scan", *mp, {runs[best].trajectory}, 50, 50, 0.25);
            report("pca_scan", *mp);
        }

        // Hessian spectra at the origin and on the first ring
        const double ring = sombrero_critical_radius(nu, 2);
        const std::size_t dim = m->dimension();
        {
            ModelPtr mh = demo_sombrero();
            HessianConfig hc;
            hc.seed = cfg_.seed;
            hessian(*mh, "hessian_origin", ParameterVector::zeros(dim), hc, {-3.0, 3.0}, 100);
            hessian(*mh, "hessian_ring", ParameterVector::basis(dim, 0, ring), hc, {-3.0, 3.0}, 100);
            report("hessian", *mh);
        }

        // NEB along the first ring and AutoNEB across the barrier to the origin
        {
            if (dim < 2) throw UsageError("sombrero-pipeline demo needs --dim >= 2");
            ModelPtr mn = demo_sombrero();
            NebConfig nc;
            neb(*mn, "neb_ring", ParameterVector::basis(dim, 0, ring), ParameterVector::basis(dim, 1, ring), false, nc, 10);
            report("neb_ring", *mn);
            ModelPtr ma = demo_sombrero();
            neb(*ma, "autoneb_barrier", ParameterVector::basis(dim, 0, ring), ParameterVector::zeros(dim), true, nc, 10);
            report("autoneb_barrier", *ma);
        }
        if (!deferred_error_.empty()) throw NumericalError(deferred_error_);
    }
};

// ---- command line

struct FlagTable {
    struct Entry {
        CLI::Option* option;
        std::function<void(ExperimentConfig&, const std::string&)> apply;
    };
    std::deque<std::string> storage;
    std::vector<Entry> entries;

    void add(CLI::App& app, const std::string& name, const std::string& help,
             std::function<void(ExperimentConfig&, const std::string&)> apply) {
        storage.emplace_back();
        CLI::Option* opt = app.add_option(name, storage.back(), help);
        opt->allow_extra_args(false);
        entries.push_back({opt, std::move(apply)});
    }
};

std::uint64_t parse_uint(const std::string& text, const std::string& flag) {
    std::uint64_t v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw UsageError("malformed value for " + flag + ": '" + text + "'");
    return v;
}

double parse_real(const std::string& text, const std::string& flag) {
    auto v = parse_vector(text, flag);
    if (v.size() != 1) throw UsageError("malformed value for " + flag + ": '" + text + "'");
    return v.front();
}

} // namespace

void run_experiment(const ExperimentConfig& config, std::ostream& log) {
    config.validate();
    if (config.params.threads > 0) set_max_threads(config.params.threads);
    Runner(config, log).run();
}

ExperimentConfig parse_command_line(const std::vector<std::string>& args) {
    CLI::App app{"Loss-landscape scans, Hessians, PCA and elastic-band paths for variational losses", "landscape"};
    app.set_help_flag("-h,--help", "Print this help and exit");
    std::string operation, demo, config_file, save_file;
    app.add_option("operation", operation,
                   "scan1d | scan2d | pca-scan | hessian | eigen-ratio-scan | neb | autoneb | optimize | demo");
    app.add_option("name", demo, "demo name (sombrero-pipeline)");
    app.add_option("--config", config_file, "JSON experiment config; flags override its fields");
    app.add_option("--save-config", save_file, "write the effective config as JSON");

    FlagTable t;
    using C = ExperimentConfig;
    using S = const std::string&;
#define SIZE_FLAG(flag, help, expr) \
    t.add(app, flag, help, [](C& c, S v) { expr = static_cast<std::decay_t<decltype(expr)>>(parse_uint(v, flag)); })
#define REAL_FLAG(flag, help, expr) t.add(app, flag, help, [](C& c, S v) { expr = parse_real(v, flag); })
#define TEXT_FLAG(flag, help, expr) t.add(app, flag, help, [](C& c, S v) { expr = v; })
#define VEC_FLAG(flag, help, expr) t.add(app, flag, help, [](C& c, S v) { expr = parse_vector(v, flag); })

    TEXT_FLAG("--model", "sombrero | constant | quadratic | qaoa | qcbm | pauli", c.model.kind);
    SIZE_FLAG("--dim", "parameter dimension for sombrero/constant/quadratic", c.model.dim);
    REAL_FLAG("--nu", "sombrero frequency", c.model.nu);
    REAL_FLAG("--value", "constant model value", c.model.value);
    VEC_FLAG("--diag", "quadratic Hessian diagonal, comma separated", c.model.diagonal);
    TEXT_FLAG("--graph-file", "QAOA graph file ('n N' then 'u v w' lines)", c.model.graph_file);
    SIZE_FLAG("--vertices", "random regular graph size", c.model.vertices);
    SIZE_FLAG("--degree", "random regular graph degree", c.model.degree);
    TEXT_FLAG("--weights", "unit | integer-set | uniform", c.model.weights);
    SIZE_FLAG("--graph-seed", "seed of the random graph or target distribution", c.model.graph_seed);
    SIZE_FLAG("--layers", "QAOA depth p", c.model.layers);
    SIZE_FLAG("--qubits", "qubits of the hardware-efficient ansatz", c.model.qubits);
    SIZE_FLAG("--ansatz-layers", "entangling layers of the hardware-efficient ansatz", c.model.ansatz_layers);
    TEXT_FLAG("--dist-file", "QCBM target distribution ('bitstring probability' lines)", c.model.dist_file);
    TEXT_FLAG("--hamiltonian-file", "Pauli sum ('coefficient string' lines)", c.model.hamiltonian_file);
    REAL_FLAG("--kl-epsilon", "probability clip of the KL loss", c.model.kl_epsilon);
    SIZE_FLAG("--shots", "finite-shot evaluation (0 = exact)", c.model.shots);

    t.add(app, "--res", "grid resolution on both axes", [](C& c, S v) {
        c.params.res_x = c.params.res_y = static_cast<std::size_t>(parse_uint(v, "--res"));
    });
    SIZE_FLAG("--res-x", "grid resolution along t1", c.params.res_x);
    SIZE_FLAG("--res-y", "grid resolution along t2", c.params.res_y);
    t.add(app, "--range", "lo:hi for both axes",
          [](C& c, S v) { c.params.range_x = c.params.range_y = parse_interval(v, "--range"); });
    t.add(app, "--range-x", "lo:hi along t1 (and 1D scans)",
          [](C& c, S v) { c.params.range_x = parse_interval(v, "--range-x"); });
    t.add(app, "--range-y", "lo:hi along t2", [](C& c, S v) { c.params.range_y = parse_interval(v, "--range-y"); });
    SIZE_FLAG("--points", "samples of 1D scans", c.params.points);
    REAL_FLAG("--dir-norm", "norm of random scan directions", c.params.dir_norm);
    VEC_FLAG("--origin", "scan origin / Hessian point / single optimizer start", c.params.origin);
    VEC_FLAG("--point-a", "first endpoint (interpolation scans, NEB)", c.params.point_a);
    VEC_FLAG("--point-b", "second endpoint (interpolation scans, NEB)", c.params.point_b);

    TEXT_FLAG("--optimizer", "gd | spsa", c.params.optimizer);
    SIZE_FLAG("--starts", "number of optimizer runs", c.params.starts);
    REAL_FLAG("--init-range", "random starts are uniform in [-r, r] per coordinate", c.params.init_range);
    REAL_FLAG("--lr", "optimizer learning rate", c.params.learning_rate);
    SIZE_FLAG("--iterations", "optimizer iterations", c.params.iterations);
    REAL_FLAG("--grad-step", "central-difference step", c.params.grad_step);
    SIZE_FLAG("--spsa-directions", "SPSA directions per step", c.params.spsa_directions);
    REAL_FLAG("--spsa-eps", "SPSA perturbation size", c.params.spsa_eps);

    TEXT_FLAG("--hessian", "exact | spsa", c.params.hessian);
    REAL_FLAG("--hessian-step", "finite-difference step of the exact Hessian", c.params.hessian_step);
    SIZE_FLAG("--repetitions", "SPSA Hessian repetitions", c.params.repetitions);
    REAL_FLAG("--hessian-eps", "SPSA Hessian perturbation size", c.params.hessian_eps);

    SIZE_FLAG("--pivots", "NEB pivots including endpoints", c.params.pivots);
    REAL_FLAG("--neb-lr", "NEB learning rate", c.params.neb_learning_rate);
    SIZE_FLAG("--neb-iterations", "NEB iterations per run or cycle", c.params.neb_iterations);
    SIZE_FLAG("--cycles", "AutoNEB cycles", c.params.cycles);
    REAL_FLAG("--spring", "spring constant (0 = projected gradient with redistribution)", c.params.spring);
    REAL_FLAG("--insert-rel-tol", "AutoNEB relative insertion tolerance", c.params.insert_rel_tol);
    REAL_FLAG("--insert-abs-tol", "AutoNEB absolute insertion tolerance", c.params.insert_abs_tol);
    SIZE_FLAG("--max-new-pivots", "AutoNEB pivots inserted per cycle", c.params.max_new_pivots);
    SIZE_FLAG("--profile-samples", "path profile samples per segment", c.params.profile_samples);

    REAL_FLAG("--margin", "PCA scan margin as a fraction of the projected extent", c.params.margin);
    SIZE_FLAG("--threads", "worker cap for parallel evaluation (0 = all cores)", c.params.threads);

    SIZE_FLAG("--seed", "master seed", c.seed);
    TEXT_FLAG("--out", "output directory", c.out_dir);
    t.add(app, "--formats", "comma-separated subset of json,csv,svg",
          [](C& c, S v) { c.formats = parse_formats(v); });
    TEXT_FLAG("--colormap", "viridis | grayscale", c.render.colormap);
    SIZE_FLAG("--width", "figure width in pixels", c.render.width);
    SIZE_FLAG("--height", "figure height in pixels", c.render.height);
#undef SIZE_FLAG
#undef REAL_FLAG
#undef TEXT_FLAG
#undef VEC_FLAG
    bool contours = false, no_overlays = false;
    CLI::Option* contours_flag = app.add_flag("--contours", contours, "draw contour lines on heatmaps");
    CLI::Option* overlays_flag = app.add_flag("--no-overlays", no_overlays, "omit trajectory overlays");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    if (argv.empty()) argv.push_back("landscape");
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    }

    ExperimentConfig config = config_file.empty() ? ExperimentConfig{} : load_config(config_file);
    if (!operation.empty()) config.operation = operation;
    if (!demo.empty()) config.demo = demo;
    bool out_given = false;
    for (const auto& e : t.entries) {
        if (e.option->count() == 0) continue;
        e.apply(config, e.option->as<std::string>());
        if (e.option->get_name() == "--out") out_given = true;
    }
    if (contours_flag->count()) config.render.contours = contours;
    if (overlays_flag->count()) config.render.overlays = !no_overlays;
    if (!out_given && config_file.empty()) {
        if (const char* env = std::getenv(kOutDirEnv); env && *env) config.out_dir = env;
    }

    if (config.operation.empty()) throw UsageError("missing required: operation");
    if (config.operation != "demo" && config.model.kind.empty() && config.model.graph_file.empty() &&
        config.model.dist_file.empty() && config.model.hamiltonian_file.empty())
        throw UsageError("missing required: --model");
    config.validate();
    if (!save_file.empty()) save_config(config, save_file);
    return config;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        ExperimentConfig config = parse_command_line(args);
        run_experiment(config, err);
        return kExitOk;
    } catch (const HelpRequested& h) {
        out << h.what();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

} // namespace landscape::io
