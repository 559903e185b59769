#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "landscape/core.hpp"
#include "landscape/random.hpp"
#include "landscape/scans.hpp"
#include "landscape/testbed/models.hpp"

using namespace landscape;
using namespace landscape::testbed;

TEST_CASE("parameter vectors reject empty and non-finite input") {
    CHECK_THROWS_AS(ParameterVector(std::vector<double>{}), UsageError);
    CHECK_THROWS_AS(ParameterVector({1.0, std::numeric_limits<double>::quiet_NaN()}), UsageError);
    CHECK_THROWS_AS(ParameterVector({std::numeric_limits<double>::infinity()}), UsageError);
    ParameterVector a{1.0, 2.0};
    CHECK_THROWS_AS(a + ParameterVector({1.0, 2.0, 3.0}), UsageError);
    CHECK((a * 2.0)[1] == 4.0);
    CHECK(lerp(a, ParameterVector({3.0, 6.0}), 0.5) == ParameterVector({2.0, 4.0}));
}

TEST_CASE("constant and sombrero model values") {
    auto c = constant_loss(3.5, 3);
    CHECK(c->evaluate(ParameterVector({0.1, -7.0, 2.0})) == 3.5);
    auto s = sombrero_loss(2.0, 4);
    CHECK(s->evaluate(ParameterVector::zeros(4)) == 0.0);
    CHECK(s->evaluate(ParameterVector({std::numbers::pi / 2, 0, 0, 0})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s->evaluate(ParameterVector({0.7, 0, 0, 0})) == s->evaluate(ParameterVector({0, 0, 0, 0.7})));
    CHECK_THROWS_AS(s->evaluate(ParameterVector({1.0, 2.0})), UsageError);
}

TEST_CASE("sombrero ring levels") {
    // 1D minimization of the radial profile by golden section as an independent oracle
    auto radial = [](double r) { return sombrero_radial(2.0, r); };
    auto golden = [&](double lo, double hi) {
        const double g = (std::sqrt(5.0) - 1) / 2;
        for (int it = 0; it < 200; ++it) {
            double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
            if (radial(a) < radial(b)) hi = b;
            else lo = a;
        }
        return 0.5 * (lo + hi);
    };
    const double r1 = golden(3.0, 4.5), r2 = golden(6.5, 7.5);
    CHECK(std::abs(radial(r1) - 0.8717) < 5e-4);
    CHECK(std::abs(radial(r2) - 0.9289) < 5e-4);
    CHECK(sombrero_critical_radius(2.0, 2) == doctest::Approx(r1).epsilon(1e-6));
    CHECK(sombrero_critical_radius(2.0, 4) == doctest::Approx(r2).epsilon(1e-6));
}

TEST_CASE("non-finite loss aborts with the offending point") {
    auto m = make_function_model(2, [](std::span<const double> t) { return t[0] > 0 ? std::log(-1.0) : 0.0; });
    try {
        m->evaluate(ParameterVector({1.0, 2.0}));
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(e.point() == std::vector<double>{1.0, 2.0});
    }
}

TEST_CASE("gradients") {
    Matrix h(2, 2);
    h(0, 0) = 2;
    h(1, 1) = 4;
    auto q = quadratic_loss(h);  // theta1^2 + 2 theta2^2
    auto g = gradient(*q, ParameterVector({1.0, 1.0}), GradientEstimator::central());
    CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(g[1] == doctest::Approx(4.0).epsilon(1e-8));
    auto z = gradient(*constant_loss(1.0, 3), ParameterVector({1.0, 2.0, 3.0}), GradientEstimator::central());
    for (double v : z.values()) CHECK(v == 0.0);
    auto s = sombrero_loss();
    auto g0 = gradient(*s, ParameterVector::zeros(4), GradientEstimator::central());
    CHECK(g0.norm() < 1e-6);

    SUBCASE("cost") {
        q->reset_eval_count();
        gradient(*q, ParameterVector({0.3, 0.4}), GradientEstimator::central());
        CHECK(q->eval_count() == 4);
        q->reset_eval_count();
        gradient(*q, ParameterVector({0.3, 0.4}), GradientEstimator::forward());
        CHECK(q->eval_count() == 3);
    }
    SUBCASE("analytic callback") {
        auto est = GradientEstimator::from_callback([](const ParameterVector& p) { return 2.0 * p; });
        CHECK(gradient(*q, ParameterVector({1.0, 2.0}), est) == ParameterVector({2.0, 4.0}));
    }
    SUBCASE("invalid step") { CHECK_THROWS_AS(GradientEstimator::central(0.0).validate(), UsageError); }
}

TEST_CASE("central differences converge at second order") {
    auto cubic = make_function_model(2, [](std::span<const double> t) {
        return t[0] * t[0] * t[0] + 2 * t[0] * t[1] * t[1] + std::pow(t[1], 4);
    });
    const ParameterVector p{0.7, -0.4};
    const double exact0 = 3 * 0.49 + 2 * 0.16;
    std::vector<double> err;
    for (double h : {1e-2, 5e-3, 2.5e-3}) err.push_back(std::abs(gradient(*cubic, p, GradientEstimator::central(h))[0] - exact0));
    CHECK(std::log2(err[0] / err[1]) >= 1.9);
    CHECK(std::log2(err[1] / err[2]) >= 1.9);
}

TEST_CASE("evaluation budget report") {
    auto m = constant_loss(0.0, 25);
    CHECK(m->eval_count() == 0);
    for (int i = 0; i < 100; ++i) m->evaluate(ParameterVector::zeros(25));
    CHECK(evaluation_budget_report(*m).equivalent_gradient_steps == 2.0);
    m->reset_eval_count();
    auto d = Direction(ParameterVector::basis(25, 0));
    auto e = Direction(ParameterVector::basis(25, 1));
    scan_2d(*m, ParameterVector::zeros(25), d, e, {-1, 1}, {-1, 1}, 30, 30);
    auto r = evaluation_budget_report(*m);
    CHECK(r.count == 900);
    CHECK(r.equivalent_gradient_steps == 18.0);
}

TEST_CASE("evaluate_many keeps order and counts every call") {
    auto m = make_function_model(1, [](std::span<const double> t) { return 3.0 * t[0]; });
    std::vector<ParameterVector> pts;
    for (int i = 0; i < 257; ++i) pts.emplace_back(std::vector<double>{static_cast<double>(i)});
    auto v = evaluate_many(*m, pts);
    for (int i = 0; i < 257; ++i) CHECK(v[i] == 3.0 * i);
    CHECK(m->eval_count() == 257);
}

TEST_CASE("rng streams are reproducible and well spread") {
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        auto x = a.next();
        CHECK(x == b.next());
        differs = differs || x != c.next();
    }
    CHECK(differs);
    CHECK(mix_seed(1, 2) != mix_seed(2, 1));
    Rng r(5);
    double sum = 0, sq = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double z = r.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::abs(sum / n) < 0.05);
    CHECK(std::abs(sq / n - 1.0) < 0.05);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) seen.insert(r.below(7));
    CHECK(seen.size() == 7);
    CHECK(*seen.rbegin() == 6);
}
