// Acceptance checks. Each criterion prints exactly one PASS/FAIL line with its
// measured figures and runtime. `acceptance N` runs criterion N only.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "landscape/geometric.hpp"
#include "landscape/hessian.hpp"
#include "landscape/io/cli.hpp"
#include "landscape/linalg.hpp"
#include "landscape/neb.hpp"
#include "landscape/pca.hpp"
#include "landscape/random.hpp"
#include "landscape/scans.hpp"
#include "landscape/testbed/models.hpp"
#include "landscape/testbed/optimizers.hpp"
#include "support.hpp"

using namespace landscape;
using namespace landscape::testbed;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v, int prec = 4) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

Matrix diag(std::initializer_list<double> d) {
    Matrix m(d.size(), d.size());
    std::size_t i = 0;
    for (double v : d) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

ParameterVector uniform_point(Rng& rng, std::size_t dim, double lo, double hi) {
    std::vector<double> v(dim);
    for (double& x : v) x = rng.uniform(lo, hi);
    return ParameterVector(std::move(v));
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i] / n;
        mb += b[i] / n;
    }
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

std::vector<double> standardized(const std::vector<double>& v) {
    double m = 0, s = 0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    for (double x : v) s += (x - m) * (x - m);
    s = std::sqrt(s / static_cast<double>(v.size()));
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v) out.push_back(s > 0 ? (x - m) / s : 0.0);
    return out;
}

// 1. Sombrero multi-start
Outcome sombrero_multistart() {
    auto s = sombrero_loss(2.0, 4);
    const std::vector<double> levels{0.0, 0.8717, 0.9289};
    int off = 0, at_zero = 0;
    double worst = 0;
    for (std::uint64_t k = 0; k < 100; ++k) {
        Rng rng = Rng::derive(2024, k);
        auto tr = gradient_descent(*s, GradientEstimator::central(), uniform_point(rng, 4, -5, 5), 0.05, 150);
        double nearest = 1e300;
        for (double l : levels) nearest = std::min(nearest, std::abs(tr.final_loss() - l));
        if (nearest > 0.02) ++off;
        worst = std::max(worst, nearest);
        if (std::abs(tr.final_loss()) <= 0.02) ++at_zero;
    }
    return {off == 0 && at_zero <= 10, "off-level runs " + std::to_string(off) + "/100 (worst distance " + fmt(worst) +
                                            "), runs at 0: " + std::to_string(at_zero) + "/100"};
}

// 2. Sombrero Hessian spectra
Outcome sombrero_spectra() {
    auto s = sombrero_loss(2.0, 4);
    auto h0 = exact_hessian(*s, ParameterVector::zeros(4));
    double dev = 0;
    for (double l : h0.eigenvalues) dev = std::max(dev, std::abs(l - 4.0 / 3.0) / (4.0 / 3.0));
    const double r1 = sombrero_critical_radius(2.0, 2);
    int large = 0, flat = 0;
    std::string ring_vals;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto p = random_unit_direction(4, seed).scaled_to(r1).vector();
        auto h = exact_hessian(*s, p);
        int l = 0, f = 0;
        for (double v : h.eigenvalues) {
            if (v > 0.05) ++l;
            if (std::abs(v) < 1e-3) ++f;
        }
        large += l == 1;
        flat += f == 3;
        if (seed == 0)
            for (double v : h.eigenvalues) ring_vals += fmt(v, 3) + " ";
    }
    return {dev <= 0.02 && large == 3 && flat == 3,
            "origin max rel dev " + fmt(dev) + "; ring spectrum " + ring_vals + "(3/3 ring points with 1 large, 3 flat: " +
                std::to_string(std::min(large, flat)) + ")"};
}

// 3. NEB connectivity
Outcome neb_connectivity() {
    auto s = sombrero_loss(2.0, 4);
    const double r1 = sombrero_critical_radius(2.0, 2);
    const auto g = GradientEstimator::central();
    NebConfig cfg;
    auto a = ParameterVector::basis(4, 0, r1), b = ParameterVector::basis(4, 1, r1);
    auto ring = run_neb(init_chain(a, b, 10), *s, g, cfg).back();
    const double ring_max = max_of(chain_loss_profile(ring, *s, 20).values);

    auto auto_hist = run_auto_neb(init_chain(a, ParameterVector::zeros(4), 10), *s, g, cfg);
    const double barrier = max_of(chain_loss_profile(auto_hist.back(), *s, 20).values);
    return {ring_max <= 0.882 && barrier >= 1.20 && barrier <= 1.23,
            "same-ring max " + fmt(ring_max, 5) + " (<= 0.882); ring-to-origin max " + fmt(barrier, 5) +
                " (in [1.20, 1.23]), " + std::to_string(auto_hist.back().size()) + " pivots"};
}

// 4. PCA linearity
Outcome pca_linearity() {
    auto s = sombrero_loss(2.0, 4);
    double worst = 1.0;
    for (std::uint64_t k = 0; k < 20; ++k) {
        Rng rng = Rng::derive(77, k);
        auto tr = gradient_descent(*s, GradientEstimator::central(), uniform_point(rng, 4, -5, 5), 0.05, 150);
        worst = std::min(worst, fit_principal_frame(tr.trajectory, 2).explained_ratio[0]);
    }
    return {worst >= 0.99, "min first explained ratio over 20 trajectories " + fmt(worst, 10)};
}

// 5. Hessian oracles
Outcome hessian_oracles() {
    Rng rng(5);
    double exact_err = 0;
    for (int t = 0; t < 10; ++t) {
        std::vector<double> lambda(6);
        for (double& l : lambda) l = rng.uniform(-4, 4);
        auto a = testsupport::planted_symmetric(lambda, 500 + t);
        auto q = quadratic_loss(a);
        auto h = exact_hessian(*q, uniform_point(rng, 6, -2, 2));
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) exact_err = std::max(exact_err, std::abs(h.matrix(i, j) - a(i, j)));
    }
    auto q = quadratic_loss(diag({2, 4}));
    auto hs = spsa_hessian(*q, ParameterVector({0.2, -0.5}), 2000, 1e-2, 11);
    const Matrix truth = diag({2, 4});
    double spsa_err = 0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) spsa_err = std::max(spsa_err, std::abs(hs.matrix(i, j) - truth(i, j)));
    const double spsa_rel = spsa_err / 4.0;
    double eig_err = 0;
    for (std::size_t n = 2; n <= 20; ++n) {
        std::vector<double> lambda(n);
        for (double& l : lambda) l = rng.uniform(-10, 10);
        auto e = jacobi_eigen(testsupport::planted_symmetric(lambda, 900 + n));
        std::sort(lambda.begin(), lambda.end());
        for (std::size_t k = 0; k < n; ++k) eig_err = std::max(eig_err, std::abs(e.values[k] - lambda[k]));
    }
    return {exact_err <= 1e-4 && spsa_rel <= 0.1 && eig_err <= 1e-8,
            "exact max err " + fmt(exact_err, 3) + "; spsa max err " + fmt(spsa_rel * 100, 3) +
                "% of max|H|; jacobi max err " + fmt(eig_err, 3)};
}

// 6. QAOA correctness and concentration
Outcome qaoa_concentration() {
    int zero_ok = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const WeightMode mode = seed % 2 ? WeightMode::integer_set : WeightMode::uniform;
        auto g = random_regular_graph(6 + 2 * (seed % 4), 3, mode, seed);
        zero_ok += qaoa_maxcut_loss(g, 2)->evaluate(ParameterVector::zeros(4)) == 0.0;
    }
    int minima_ok = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = random_regular_graph(seed % 2 ? 8 : 6, 3, WeightMode::integer_set, 100 + seed);
        double best = 1e300;
        for (std::uint64_t x = 0; x < (1ull << g.n_vertices()); ++x) {
            double e = 0;
            for (const auto& ed : g.edges()) e += ed.weight * (((x >> ed.u) ^ (x >> ed.v)) & 1 ? -1.0 : 1.0);
            best = std::min(best, e);
        }
        minima_ok += g.brute_force_minimum() == best;
    }

    const std::size_t p = 4;
    auto anchor_graph = random_regular_graph(8, 3, WeightMode::unit, 1);
    auto anchor_loss = qaoa_maxcut_loss(anchor_graph, p);
    ParameterVector best_point = ParameterVector::zeros(2 * p);
    double best_loss = 1e300;
    for (std::uint64_t k = 0; k < 8; ++k) {
        Rng rng = Rng::derive(3, k);
        auto tr = gradient_descent(*anchor_loss, GradientEstimator::central(), uniform_point(rng, 2 * p, 0.0, 1.0), 0.02, 300);
        if (tr.final_loss() < best_loss) {
            best_loss = tr.final_loss();
            best_point = tr.final_point();
        }
    }
    auto v1 = random_unit_direction(2 * p, 31).scaled_to(1.5);
    auto v2 = orthonormal_complement(v1, 32).scaled_to(1.5);

    std::vector<std::vector<double>> grids;
    for (std::size_t n : {8u, 10u, 12u})
        for (std::uint64_t k = 0; k < 5; ++k) {
            auto g = random_regular_graph(n, 3, WeightMode::unit, 1000 + 10 * n + k);
            auto loss = qaoa_maxcut_loss(g, p);
            auto scan = scan_2d(*loss, best_point, v1, v2, {-1, 1}, {-1, 1}, 30, 30);
            grids.push_back(standardized(scan.values));
        }
    double min_r = 1.0;
    for (std::size_t i = 0; i < grids.size(); ++i)
        for (std::size_t j = i + 1; j < grids.size(); ++j) min_r = std::min(min_r, pearson(grids[i], grids[j]));
    return {zero_ok == 20 && minima_ok == 10 && min_r >= 0.9,
            "zero-parameter loss exact on " + std::to_string(zero_ok) + "/20; brute-force minima " +
                std::to_string(minima_ok) + "/10; anchor loss " + fmt(best_loss, 5) + " (bitstring min " +
                fmt(anchor_graph.brute_force_minimum()) + "); min pairwise Pearson over 15 grids " + fmt(min_r)};
}

// 7. Shot-noise asymmetry
Outcome shot_noise_asymmetry() {
    auto hea = hardware_efficient_ansatz(4, 1);
    auto kl = qcbm_kl_loss(hea, DiscreteDistribution::random(4, 8));
    auto noisy_kl = with_shot_noise(kl, 500, 41);
    PauliSum h = PauliSum::parse("-1 ZZII\n-1 IZZI\n-1 IIZZ\n-1 ZIIZ\n-1 XIII\n-1 IXII\n-1 IIXI\n-1 IIIX\n");
    auto pauli = pauli_expectation_loss(hea, h);
    auto noisy_pauli = with_shot_noise(pauli, 50, 42);
    int kl_up = 0, pauli_ok = 0;
    Rng rng(12);
    for (int k = 0; k < 20; ++k) {
        auto p = uniform_point(rng, parameter_count(AnsatzSpec(hea)), -kPi, kPi);
        std::vector<double> est;
        for (int r = 0; r < 200; ++r) est.push_back(noisy_kl->evaluate(p));
        std::nth_element(est.begin(), est.begin() + 100, est.end());
        const double upper = est[100];
        std::nth_element(est.begin(), est.begin() + 99, est.begin() + 100);
        const double median = 0.5 * (upper + est[99]);
        kl_up += median >= kl->evaluate(p);

        double sum = 0;
        for (int r = 0; r < 200; ++r) sum += noisy_pauli->evaluate(p);
        const double se = std::sqrt(pauli->single_shot_variance(p.coords()) / 50.0 / 200.0);
        pauli_ok += std::abs(sum / 200.0 - pauli->evaluate(p)) <= 4 * se;
    }
    return {kl_up >= 18 && pauli_ok >= 19, "KL median >= exact at " + std::to_string(kl_up) +
                                               "/20 points; Pauli mean within 4 SE at " + std::to_string(pauli_ok) +
                                               "/20 points"};
}

// 8. SPSA budget parity
Outcome spsa_budget() {
    auto hea = hardware_efficient_ansatz(4, 1);
    auto kl = qcbm_kl_loss(hea, DiscreteDistribution::random(4, 2));
    auto p0 = ParameterVector::zeros(16);
    kl->reset_eval_count();
    (void)spsa_step(*kl, p0, 0.05, 3, 0.1, 1);
    const auto step_cost = kl->eval_count();
    int improved = 0;
    std::string finals;
    for (std::uint64_t k = 0; k < 4; ++k) {
        Rng rng = Rng::derive(8, k);
        auto start = uniform_point(rng, 16, -kPi, kPi);
        auto tr = spsa_optimize(*kl, start, 0.05, 200, 3, 0.1, 100 + k);
        improved += tr.final_loss() < tr.losses.front();
        finals += fmt(tr.losses.front(), 3) + "->" + fmt(tr.final_loss(), 3) + " ";
    }
    return {step_cost == 6 && improved == 4,
            "one step cost " + std::to_string(step_cost) + " evaluations; restarts improved " + std::to_string(improved) +
                "/4 (" + finals + ")"};
}

// 9. Periodic wrapping
Outcome periodic_wrapping() {
    const double two_pi = 2 * kPi;
    auto w = relative_periodic_wrap(ParameterVector({0.1, 1.2}), ParameterVector({two_pi - 0.1, 1.3}), two_pi);
    const bool exact = w[0] == (two_pi - 0.1) - two_pi && std::abs(w[0] + 0.1) <= 1e-12 && w[1] == 1.3;

    auto hea = hardware_efficient_ansatz(4, 1);
    auto kl = qcbm_kl_loss(hea, DiscreteDistribution::random(4, 5));
    const double period = *kl->period();
    Rng rng(4);
    int shorter = 0;
    for (int k = 0; k < 10; ++k) {
        auto a = uniform_point(rng, 16, -kPi, kPi);
        std::vector<double> b(16);
        for (std::size_t i = 0; i < 16; ++i)
            b[i] = a[i] + rng.uniform(-1, 1) + period * static_cast<double>(static_cast<int>(rng.below(5)) - 2);
        ParameterVector target(b);
        auto wrapped = relative_periodic_wrap(a, target, period);
        auto raw = scan_1d_interpolation(*kl, a, target, {0, 1}, 21);
        auto folded = scan_1d_interpolation(*kl, a, wrapped, {0, 1}, 21);
        shorter += folded.direction.norm() < raw.direction.norm() &&
                   std::abs(folded.values.back() - raw.values.back()) < 1e-9;
    }
    return {exact && shorter == 10, std::string("listing example ") + (exact ? "exact" : "mismatch") + " (" +
                                        fmt(w[0], 17) + ", " + fmt(w[1], 17) + "); wrapped endpoint shorter at " +
                                        std::to_string(shorter) + "/10"};
}

// 10. Evaluation accounting
Outcome evaluation_accounting() {
    auto m = constant_loss(0.0, 25);
    auto dx = random_unit_direction(25, 1);
    auto dy = orthonormal_complement(dx, 2);
    (void)scan_2d(*m, ParameterVector::zeros(25), dx, dy, {-1, 1}, {-1, 1}, 30, 30);
    auto r = evaluation_budget_report(*m);
    return {r.count == 900 && r.equivalent_gradient_steps == 18.0,
            std::to_string(r.count) + " evaluations = " + fmt(r.equivalent_gradient_steps) + " gradient steps"};
}

// 11. Serialization stability
Outcome serialization_stability() {
    const auto root = fs::temp_directory_path() / "landscape_acceptance_goldens";
    fs::remove_all(root);
    const std::vector<std::vector<std::string>> commands{
        {"scan2d", "--model", "constant", "--value", "0.25", "--dim", "3", "--res", "8", "--contours"},
        {"scan2d", "--model", "sombrero", "--res", "20", "--range", "-10:10"},
        {"scan1d", "--model", "qaoa", "--vertices", "8", "--layers", "2"},
        {"scan2d", "--model", "pauli", "--qubits", "3", "--shots", "30", "--res", "6"},
        {"hessian", "--model", "qcbm", "--qubits", "3"},
        {"pca-scan", "--model", "sombrero", "--starts", "3", "--res", "10"},
        {"demo", "sombrero-pipeline"},
    };
    std::size_t files = 0, identical = 0;
    for (std::size_t c = 0; c < commands.size(); ++c) {
        for (const char* run : {"a", "b"}) {
            std::vector<std::string> args{"landscape"};
            args.insert(args.end(), commands[c].begin(), commands[c].end());
            for (std::string extra : {"--seed", "13", "--out"}) args.push_back(extra);
            args.push_back((root / run / std::to_string(c)).string());
            std::ostringstream out, err;
            if (io::run_cli(args, out, err) != 0) return {false, "command failed: " + commands[c][0] + ": " + err.str()};
        }
        for (const auto& entry : fs::recursive_directory_iterator(root / "a" / std::to_string(c))) {
            if (!entry.is_regular_file()) continue;
            ++files;
            auto twin = root / "b" / fs::relative(entry.path(), root / "a");
            identical += fs::exists(twin) && testsupport::slurp(entry.path()) == testsupport::slurp(twin);
        }
    }
    return {files > 0 && identical == files,
            std::to_string(identical) + "/" + std::to_string(files) + " JSON/CSV/SVG files byte-identical across two runs"};
}

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "sombrero multi-start levels", 10, sombrero_multistart},
        {2, "sombrero Hessian spectra", 1, sombrero_spectra},
        {3, "NEB connectivity and barrier", 30, neb_connectivity},
        {4, "PCA linearity of GD trajectories", 0, pca_linearity},
        {5, "Hessian oracles", 20, hessian_oracles},
        {6, "QAOA correctness and concentration", 600, qaoa_concentration},
        {7, "shot-noise asymmetry", 300, shot_noise_asymmetry},
        {8, "SPSA budget parity", 0, spsa_budget},
        {9, "periodic wrapping", 0, periodic_wrapping},
        {10, "evaluation accounting", 0, evaluation_accounting},
        {11, "serialization stability", 0, serialization_stability},
    };

    CLI::App app{"acceptance criteria"};
    std::vector<int> only;
    app.add_option("criteria", only, "criterion numbers to run (default: all)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    int failures = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string timing = fmt(secs, 3) + " s";
        if (c.budget_s > 0) {
            timing += " (budget " + fmt(c.budget_s) + " s)";
            if (secs >= c.budget_s) {
                o.pass = false;
                o.detail += "; over runtime budget";
            }
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " " << c.name << ": " << o.detail << " ["
                  << timing << "]" << std::endl;
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
