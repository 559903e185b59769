#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "landscape/random.hpp"
#include "landscape/testbed/ansatz.hpp"
#include "landscape/testbed/graph.hpp"
#include "landscape/testbed/models.hpp"
#include "landscape/testbed/optimizers.hpp"
#include "landscape/testbed/pauli.hpp"
#include "landscape/testbed/statevector.hpp"
#include "support.hpp"

using namespace landscape;
using namespace landscape::testbed;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

using Dense4 = std::array<std::array<cd, 4>, 4>;

Dense4 kron(const std::array<std::array<cd, 2>, 2>& hi, const std::array<std::array<cd, 2>, 2>& lo) {
    Dense4 m{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) m[2 * a + c][2 * b + d] = hi[a][b] * lo[c][d];
    return m;
}

std::array<cd, 4> mat_vec(const Dense4& m, const std::array<cd, 4>& v) {
    std::array<cd, 4> out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] += m[i][j] * v[j];
    return out;
}

double expect(const Dense4& m, const std::array<cd, 4>& v) {
    auto mv = mat_vec(m, v);
    cd s = 0;
    for (int i = 0; i < 4; ++i) s += std::conj(v[i]) * mv[i];
    return s.real();
}

const std::array<std::array<cd, 2>, 2> kI{{{1, 0}, {0, 1}}};
const std::array<std::array<cd, 2>, 2> kX{{{0, 1}, {1, 0}}};
const std::array<std::array<cd, 2>, 2> kZ{{{1, 0}, {0, -1}}};

std::vector<double> random_params(std::size_t n, std::uint64_t seed, double scale = kPi) {
    Rng rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-scale, scale);
    return v;
}

// independent exhaustive minimum of sum w z_u z_v
double enumerate_minimum(const WeightedGraph& g) {
    double best = 1e300;
    for (std::uint64_t x = 0; x < (1ull << g.n_vertices()); ++x) {
        double e = 0;
        for (const auto& ed : g.edges()) {
            const int zu = ((x >> ed.u) & 1) ? -1 : 1, zv = ((x >> ed.v) & 1) ? -1 : 1;
            e += ed.weight * zu * zv;
        }
        best = std::min(best, e);
    }
    return best;
}

WeightedGraph cycle4() { return WeightedGraph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}}); }

} // namespace

TEST_CASE("gates") {
    Statevector s(2);
    s.rx(0, 0.7);
    s.rz(1, -0.3);
    auto before = s.amplitudes();
    s.rx(1, 0.0);
    CHECK(s.amplitudes() == before);

    Statevector one(2);
    one.rx(0, kPi);  // |q0 = 1>
    CHECK(std::abs(one[1] - cd(0, -1)) < 1e-15);
    CHECK(std::abs(one.norm() - 1.0) < 1e-15);
    one.cnot(0, 1);
    CHECK(std::abs(std::abs(one[3]) - 1.0) < 1e-15);
    CHECK(std::abs(one[1]) < 1e-15);

    Statevector single(1);
    single.rx(0, kPi);
    CHECK(std::abs(single[1] - cd(0, -1)) < 1e-15);
    CHECK(std::abs(single[0]) < 1e-15);

    CHECK_THROWS_AS(s.cnot(0, 0), UsageError);
    CHECK_THROWS_AS(s.rx(2, 0.1), UsageError);
    CHECK_THROWS_AS(s.cz(1, 1), UsageError);

    Statevector big(5);
    auto ang = random_params(40, 3);
    for (std::size_t k = 0; k < 40; ++k) {
        big.rx(k % 5, ang[k]);
        big.rz((k + 2) % 5, ang[(k + 7) % 40]);
        big.cz(k % 5, (k + 1) % 5);
        big.cnot((k + 3) % 5, (k + 1) % 5);
        CHECK(std::abs(big.norm() - 1.0) < 1e-10);
    }
    CHECK_THROWS_AS(Statevector(17), UsageError);
    CHECK_THROWS_AS(Statevector::from_amplitudes({1.0, 1.0}), UsageError);
}

TEST_CASE("qaoa states and losses") {
    SUBCASE("zero angles give the uniform superposition and zero loss") {
        auto g = random_regular_graph(6, 3, WeightMode::unit, 2);
        std::vector<double> zero(2, 0.0);
        auto st = qaoa_state(g, 2, zero, zero);
        for (std::size_t i = 0; i < st.size(); ++i) CHECK(st[i] == cd(1.0 / 8.0, 0.0));
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto mode = seed % 3 == 0 ? WeightMode::unit : seed % 3 == 1 ? WeightMode::integer_set : WeightMode::uniform;
            auto gr = random_regular_graph(4 + 2 * (seed % 4), 3, mode, seed);
            CHECK(qaoa_maxcut_loss(gr, 2)->evaluate(ParameterVector::zeros(4)) == 0.0);
        }
    }
    SUBCASE("norm on a 6 vertex graph") {
        auto g = random_regular_graph(6, 3, WeightMode::integer_set, 5);
        auto p = random_params(6, 9);
        auto st = qaoa_state(g, 3, std::span(p).first(3), std::span(p).last(3));
        CHECK(std::abs(st.norm() - 1.0) < 1e-10);
        CHECK_THROWS_AS(qaoa_state(g, 3, std::span(p).first(2), std::span(p).last(3)), UsageError);
    }
    SUBCASE("single edge against a dense 4x4 computation") {
        const double gamma = 0.4, beta = 0.3;
        WeightedGraph g(2, {{0, 1, 1.0}});
        auto zz = kron(kZ, kZ);
        std::array<cd, 4> v{0.5, 0.5, 0.5, 0.5};
        // exp(-i gamma ZZ): diagonal
        for (int i = 0; i < 4; ++i) v[i] *= std::exp(cd(0, -gamma * zz[i][i].real()));
        // exp(-i beta H_B) with H_B = -(X0 + X1): per qubit cos(b) I + i sin(b) X
        std::array<std::array<cd, 2>, 2> mix{{{std::cos(beta), cd(0, std::sin(beta))},
                                              {cd(0, std::sin(beta)), std::cos(beta)}}};
        v = mat_vec(kron(mix, mix), v);
        const double oracle = expect(zz, v);
        auto loss = qaoa_maxcut_loss(g, 1);
        CHECK(std::abs(loss->evaluate(ParameterVector({gamma, beta})) - oracle) < 1e-12);
        CHECK(loss->dimension() == 2);
    }
    SUBCASE("bitstring minima") {
        CHECK(cycle4().brute_force_minimum() == -4.0);
        CHECK(WeightedGraph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}).brute_force_minimum() == -1.0);
        auto k4 = random_regular_graph(4, 3, WeightMode::unit, 0);
        CHECK(k4.edges().size() == 6);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto g = random_regular_graph(8, 3, WeightMode::integer_set, seed);
            CHECK(g.brute_force_minimum() == enumerate_minimum(g));
        }
    }
    SUBCASE("variational bound on a grid") {
        auto g = cycle4();
        auto loss = qaoa_maxcut_loss(g, 1);
        double best = 1e300;
        for (int i = 0; i < 25; ++i)
            for (int j = 0; j < 25; ++j)
                best = std::min(best, loss->evaluate(ParameterVector({kPi * i / 24.0, kPi * j / 24.0})));
        CHECK(best >= g.brute_force_minimum() - 1e-12);
        CHECK(best < -2.0);
    }
    SUBCASE("declared period") {
        auto g = random_regular_graph(6, 3, WeightMode::unit, 4);
        auto loss = qaoa_maxcut_loss(g, 2);
        REQUIRE(loss->period().has_value());
        const double per = *loss->period();
        CHECK(per == doctest::Approx(2 * kPi));
        ParameterVector p(random_params(4, 8));
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(loss->evaluate(p.shifted(i, per)) - loss->evaluate(p)) < 1e-9);
        auto uniform = qaoa_maxcut_loss(random_regular_graph(6, 3, WeightMode::uniform, 4), 1);
        CHECK(!uniform->period().has_value());
    }
}

TEST_CASE("random regular graphs") {
    auto k4 = random_regular_graph(4, 3, WeightMode::unit, 11);
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : k4.edges()) edges.insert({e.u, e.v});
    CHECK(edges.size() == 6);
    for (std::size_t n : {6u, 8u, 10u})
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto g = random_regular_graph(n, 3, WeightMode::integer_set, seed);
            for (auto d : g.degrees()) CHECK(d == 3);
            for (const auto& e : g.edges()) {
                CHECK(e.u < e.v);
                const double a = std::abs(e.weight);
                CHECK((a == 1 || a == 2 || a == 3));
            }
        }
    for (const auto& e : random_regular_graph(8, 3, WeightMode::unit, 1).edges()) CHECK(e.weight == 1.0);
    for (const auto& e : random_regular_graph(8, 3, WeightMode::uniform, 1).edges()) {
        CHECK(e.weight >= 0.0);
        CHECK(e.weight <= 1.0);
    }
    CHECK(random_regular_graph(10, 3, WeightMode::unit, 5) == random_regular_graph(10, 3, WeightMode::unit, 5));
    CHECK_THROWS_AS(random_regular_graph(7, 3, WeightMode::unit, 1), UsageError);
    CHECK_THROWS_AS(random_regular_graph(3, 3, WeightMode::unit, 1), UsageError);
    CHECK_THROWS_AS(WeightedGraph(3, {{0, 0, 1}}), UsageError);
    CHECK_THROWS_AS(WeightedGraph(3, {{0, 1, 1}, {1, 0, 2}}), UsageError);
    CHECK_THROWS_AS(parse_weight_mode("gaussian"), UsageError);

    auto g = random_regular_graph(6, 3, WeightMode::integer_set, 3);
    auto dir = testsupport::scratch_dir("graph");
    write_graph(g, dir / "g.txt");
    CHECK(read_graph(dir / "g.txt") == g);
    CHECK(parse_graph("n 3\n0 1 1\n1 2 -2.5\n").edges().size() == 2);
    CHECK_THROWS_AS(parse_graph("0 1 1\n"), UsageError);
    CHECK_THROWS_AS(parse_graph("n 3\n0 5 1\n"), UsageError);
}

TEST_CASE("born distributions") {
    auto d0 = born_distribution(Statevector(3));
    CHECK(d0[0] == 1.0);
    auto plus = born_distribution(Statevector::plus_state(2));
    for (std::size_t i = 0; i < 4; ++i) CHECK(plus[i] == doctest::Approx(0.25).epsilon(1e-15));
    auto hea = hardware_efficient_ansatz(3, 2);
    auto st = build_state(hea, random_params(parameter_count(hea), 4));
    auto d = born_distribution(st);
    double sum = 0;
    for (double p : d.probabilities()) sum += p;
    CHECK(std::abs(sum - 1.0) < 1e-10);
    CHECK_THROWS_AS(DiscreteDistribution({0.5, 0.4}), UsageError);
    CHECK_THROWS_AS(DiscreteDistribution({0.5, 0.5, 0.0}), UsageError);
    CHECK(parse_bitstring("10") == 1);
    CHECK(format_bitstring(1, 2) == "10");
    auto parsed = parse_distribution("00 0.25\n11 0.75\n");
    CHECK(parsed[0] == 0.25);
    CHECK(parsed[3] == 0.75);
    CHECK(parsed[1] == 0.0);
}

TEST_CASE("hardware-efficient ansatz") {
    auto hea = hardware_efficient_ansatz(4, 1);
    CHECK(parameter_count(AnsatzSpec(hea)) == 16);
    CHECK(parameter_count(AnsatzSpec(hardware_efficient_ansatz(3, 2))) == 18);
    REQUIRE(declared_period(AnsatzSpec(hea)).has_value());
    CHECK(*declared_period(AnsatzSpec(hea)) == doctest::Approx(4 * kPi));
    auto zero = build_state(hea, std::vector<double>(16, 0.0));
    CHECK(std::abs(std::abs(zero[0]) - 1.0) < 1e-15);
    for (std::uint64_t s = 0; s < 5; ++s) CHECK(std::abs(build_state(hea, random_params(16, s)).norm() - 1.0) < 1e-10);
    CHECK_THROWS_AS(hardware_efficient_ansatz(1, 1), UsageError);
    CHECK_THROWS_AS(hardware_efficient_ansatz(3, 0), UsageError);
    CHECK_THROWS_AS(build_state(hea, std::vector<double>(15, 0.0)), UsageError);

    auto target = DiscreteDistribution::random(4, 3);
    auto loss = qcbm_kl_loss(hea, target);
    ParameterVector p(random_params(16, 12));
    const double per = *loss->period();
    for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(loss->evaluate(p.shifted(i, per)) - loss->evaluate(p)) < 1e-9);
}

TEST_CASE("qcbm KL loss") {
    auto hea = hardware_efficient_ansatz(2, 1);
    SUBCASE("target equal to the model distribution") {
        auto p = random_params(8, 2);
        auto target = born_distribution(build_state(hea, p));
        auto loss = qcbm_kl_loss(hea, target);
        CHECK(std::abs(loss->evaluate(ParameterVector(p))) < 1e-9);
    }
    SUBCASE("point mass against a uniform model") {
        auto loss = qcbm_kl_loss(hea, DiscreteDistribution::point_mass(2, 0));
        std::vector<double> p(8, 0.0);
        p[0] = p[1] = kPi / 2;  // RX(pi/2) on both qubits, everything else trivial
        CHECK(loss->evaluate(ParameterVector(p)) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    }
    SUBCASE("clipped term") {
        DiscreteDistribution target({0.5, 0.5, 0.0, 0.0});
        const double kl = clipped_kl(target, {1.0, 0.0, 0.0, 0.0}, 1e-6);
        const double clipped_term = 0.5 * std::log(0.5 / 1e-6);
        CHECK(clipped_term == doctest::Approx(6.5612).epsilon(1e-4));
        CHECK(kl == doctest::Approx(0.5 * std::log(0.5) + clipped_term).epsilon(1e-12));
        // outcomes outside the target support contribute nothing
        CHECK(clipped_kl(DiscreteDistribution::point_mass(2, 0), {1.0, 0.0, 0.0, 0.0}, 1e-6) == 0.0);
    }
}

TEST_CASE("pauli expectation loss") {
    CHECK(PauliSum::parse("1.0 Z").expectation(Statevector(1)) == 1.0);
    CHECK(PauliSum::parse("1.0 X").expectation(Statevector::plus_state(1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(PauliSum::parse("1.0 ZQ"), UsageError);
    CHECK_THROWS_AS(PauliSum(2, {{1.0, "Z"}}), UsageError);

    auto hea = hardware_efficient_ansatz(2, 1);
    PauliSum h = PauliSum::parse("0.5 ZZ\n0.3 XI\n");
    auto loss = pauli_expectation_loss(hea, h);
    // "XI" puts X on qubit 0, which is the low bit of the basis index
    const Dense4 dense = [] {
        Dense4 zz = kron(kZ, kZ), xi = kron(kI, kX), m{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m[i][j] = 0.5 * zz[i][j] + 0.3 * xi[i][j];
        return m;
    }();
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto p = random_params(8, 40 + s);
        auto st = build_state(hea, p);
        std::array<cd, 4> v{st[0], st[1], st[2], st[3]};
        CHECK(std::abs(loss->evaluate(ParameterVector(p)) - expect(dense, v)) < 1e-10);
    }
    CHECK_THROWS_AS(pauli_expectation_loss(hardware_efficient_ansatz(3, 1), h), UsageError);
}

TEST_CASE("shot noise") {
    auto hea = hardware_efficient_ansatz(4, 1);
    auto h = PauliSum::parse("1.0 ZZII\n1.0 IZZI\n1.0 IIZZ\n1.0 ZIIZ\n0.7 XIII\n0.7 IXII\n0.7 IIXI\n0.7 IIIX\n");
    auto exact = pauli_expectation_loss(hea, h);
    ParameterVector p(random_params(16, 77));
    const double truth = exact->evaluate(p);
    const double var1 = exact->single_shot_variance(p.coords());

    SUBCASE("large shot count is close to exact") {
        auto noisy = with_shot_noise(exact, 1'000'000, 5);
        CHECK(std::abs(noisy->evaluate(p) - truth) <= 3 * std::sqrt(var1 / 1e6));
    }
    SUBCASE("unbiased over many repetitions") {
        auto noisy = with_shot_noise(exact, 50, 6);
        const int reps = 10000;
        double sum = 0;
        for (int r = 0; r < reps; ++r) sum += noisy->evaluate(p);
        const double se = std::sqrt(var1 / 50.0 / reps);
        CHECK(std::abs(sum / reps - truth) <= 4 * se);
    }
    SUBCASE("replay from the seed") {
        auto a = with_shot_noise(exact, 50, 9), b = with_shot_noise(exact, 50, 9);
        for (int r = 0; r < 5; ++r) CHECK(a->evaluate(p) == b->evaluate(p));
        CHECK(!a->deterministic());
        CHECK(!a->concurrent());
    }
    SUBCASE("KL estimate median is biased upward") {
        auto target = DiscreteDistribution::random(4, 21);
        auto kl = qcbm_kl_loss(hea, target);
        auto noisy = with_shot_noise(kl, 500, 3);
        std::vector<double> est;
        for (int r = 0; r < 200; ++r) est.push_back(noisy->evaluate(p));
        std::nth_element(est.begin(), est.begin() + 100, est.end());
        CHECK(est[100] >= kl->evaluate(p));
    }
    CHECK_THROWS_AS(with_shot_noise(exact, 0, 1), UsageError);
    auto freq = sample_frequencies(DiscreteDistribution::point_mass(2, 3), 100, 1);
    CHECK(freq[3] == 1.0);
}

TEST_CASE("gradient descent") {
    Matrix h(2, 2);
    h(0, 0) = 2;
    h(1, 1) = 4;
    auto q = quadratic_loss(h);
    auto tr = gradient_descent(*q, GradientEstimator::central(), ParameterVector({1.0, 1.0}), 0.1, 10);
    REQUIRE(tr.trajectory.size() == 11);
    CHECK(tr.losses.size() == 11);
    for (std::size_t k = 0; k <= 10; ++k) {
        CHECK(tr.trajectory[k][0] == doctest::Approx(std::pow(1 - 0.1 * 2, k)).epsilon(1e-8));
        CHECK(tr.trajectory[k][1] == doctest::Approx(std::pow(1 - 0.1 * 4, k)).epsilon(1e-8));
    }
    auto s = sombrero_loss();
    auto still = gradient_descent(*s, GradientEstimator::central(), ParameterVector::zeros(4), 0.05, 5);
    for (const auto& x : still.trajectory) CHECK(x.norm() < 1e-12);
    CHECK_THROWS_AS(gradient_descent(*q, GradientEstimator::central(), ParameterVector({1.0, 1.0}), 0.0, 3), UsageError);

    auto bad = make_function_model(1, [](std::span<const double> t) { return t[0] < 0.5 ? std::log(-1.0) : t[0] * t[0]; });
    auto partial = gradient_descent(*bad, GradientEstimator::central(), ParameterVector({1.0}), 0.3, 10);
    CHECK(partial.error.has_value());
    CHECK(partial.trajectory.size() < 11);
    CHECK(partial.trajectory.size() == partial.losses.size());
}

TEST_CASE("spsa") {
    auto lin = linear_loss({1.0, -2.0, 0.5, 3.0});
    const ParameterVector c({1.0, -2.0, 0.5, 3.0});
    std::vector<double> mean(4, 0.0);
    const int draws = 5000;
    for (int k = 0; k < draws; ++k) {
        auto g = spsa_gradient(*lin, ParameterVector::zeros(4), 1, 0.1, static_cast<std::uint64_t>(k));
        for (std::size_t i = 0; i < 4; ++i) mean[i] += g[i] / draws;
    }
    CHECK((ParameterVector(mean) - c).norm() <= 0.05 * c.norm());

    lin->reset_eval_count();
    (void)spsa_step(*lin, ParameterVector::zeros(4), 0.1, 3, 0.1, 1);
    CHECK(lin->eval_count() == 6);
    auto zero = spsa_gradient(*constant_loss(2.0, 3), ParameterVector::zeros(3), 3, 0.1, 2);
    for (double v : zero.values()) CHECK(v == 0.0);
    lin->reset_eval_count();
    auto tr = spsa_optimize(*lin, ParameterVector::zeros(4), 0.01, 7, 3, 0.1, 1);
    CHECK(lin->eval_count() == 1 + 7 * 7);
    CHECK(tr.trajectory.size() == 8);
    CHECK_THROWS_AS(spsa_gradient(*lin, ParameterVector::zeros(4), 0, 0.1, 1), UsageError);
    CHECK_THROWS_AS(spsa_gradient(*lin, ParameterVector::zeros(4), 1, 0.0, 1), UsageError);
}
