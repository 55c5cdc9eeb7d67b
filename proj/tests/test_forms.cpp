#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rolldist/expr.hpp"
#include "rolldist/form.hpp"

using namespace rolldist;

namespace {

std::mt19937_64 rng(777);

Jet rand_jet(int order = 3) {
    // a smooth transcendental sample with full 4-variable dependence
    std::uniform_real_distribution<double> d(-0.5, 0.5);
    std::array<cplx, 4> base{cplx(d(rng), 0), cplx(d(rng), 0), cplx(d(rng), 0),
                             cplx(d(rng), 0)};
    static const ExprPtr e = parse("sin(u)*cosh(w1) + exp(v*w2) + u*v*w1*w2");
    static const ExprPtr f = parse("cos(v)*sinh(w2) + u*u*w1 - v*w1*w1");
    return std::uniform_int_distribution<int>(0, 1)(rng) ? eval_jet(e, base, order)
                                                         : eval_jet(f, base, order);
}

ScalarForm rand_form(int degree, int order = 3) {
    ScalarForm f(degree);
    for (auto& c : f.c) c = rand_jet(order);
    return f;
}

} // namespace

TEST_CASE("d of d vanishes") {
    for (int deg = 0; deg <= 1; ++deg)
        for (int rep = 0; rep < 10; ++rep) {
            ScalarForm f = rand_form(deg);
            ScalarForm ddf = exterior_derivative(exterior_derivative(f));
            CHECK(ddf.max_coeff_magnitude() < 1e-13);
        }
}

TEST_CASE("Leibniz rule for the wedge") {
    for (int rep = 0; rep < 10; ++rep) {
        ScalarForm f = rand_form(1);
        ScalarForm g = rand_form(1);
        ScalarForm lhs = exterior_derivative(wedge(f, g));
        // deg f = 1: d(f^g) = df^g - f^dg
        ScalarForm rhs = wedge(exterior_derivative(f), g) - wedge(f, exterior_derivative(g));
        CHECK((lhs - rhs).max_coeff_magnitude() < 1e-12);

        // product rule on 0-forms: d(h k) = dh k + dk h
        ScalarForm h = rand_form(0), k = rand_form(0);
        ScalarForm prod(0);
        prod.c[0] = h.c[0] * k.c[0];
        ScalarForm rhs0 = exterior_derivative(h) * k.c[0] + exterior_derivative(k) * h.c[0];
        CHECK((exterior_derivative(prod) - rhs0).max_coeff_magnitude() < 1e-12);
    }
}

TEST_CASE("wedge is graded-antisymmetric") {
    for (int rep = 0; rep < 10; ++rep) {
        ScalarForm f = rand_form(1), g = rand_form(1);
        CHECK((wedge(f, g) + wedge(g, f)).max_coeff_magnitude() < 1e-13);
        ScalarForm two = rand_form(2);
        CHECK((wedge(f, two) - wedge(two, f)).max_coeff_magnitude() < 1e-13);
    }
}

TEST_CASE("cross_wedge convention: omega x^ omega") {
    VectorForm om(1);
    for (int i = 0; i < 4; ++i)
        om.c[i] = JVec3{rand_jet(), rand_jet(), rand_jet()};
    VectorForm ww = cross_wedge(om, om);
    // coefficient on du^dv must be 2 (a x b) for a = du-, b = dv-part
    JVec3 expect = cross(om.c[0], om.c[1]) * 2.0;
    CHECK(max_magnitude(leading_value(ww.comp({0, 1})) - leading_value(expect)) < 1e-13);
}

TEST_CASE("surface differential ignores the w slots") {
    ScalarForm f(0);
    f.c[0] = rand_jet();
    ScalarForm d2 = exterior_derivative(f, 2);
    CHECK(std::abs(leading_value(d2.c[2])) == doctest::Approx(0.0));
    CHECK(std::abs(leading_value(d2.c[3])) == doctest::Approx(0.0));
    CHECK(std::abs(leading_value(d2.c[0]) - f.c[0].partial({1, 0, 0, 0})) < 1e-14);
}

TEST_CASE("reduce_mod substitutes the constraint differentials") {
    // phi1 = v du, phi2 = 0; then d~phi1 = dv ^ du reduces to itself,
    // coefficient -1 on du^dv.
    ScalarForm phi1(1), phi2(1);
    phi1.c[0] = Jet::variable(1, cplx(0.37, 0), 3);
    ScalarForm rho = reduce_mod(exterior_derivative(phi1), phi1, phi2);
    CHECK(std::abs(leading_value(rho.comp({0, 1})) - cplx(-1, 0)) < 1e-14);

    // phi1 = w2 du with phi2 = 0: dw2 ^ du reduces to 0 ^ du = 0.
    ScalarForm psi1(1);
    psi1.c[0] = Jet::variable(3, cplx(0.8, 0), 3);
    ScalarForm rho2 = reduce_mod(exterior_derivative(psi1), psi1, phi2);
    CHECK(rho2.max_coeff_magnitude() < 1e-14);
}

TEST_CASE("evaluate agrees with direct minor expansion") {
    ScalarForm f = rand_form(2);
    std::array<cplx, 4> t1{cplx(1, 0), cplx(2, 0), cplx(-1, 0), cplx(0.5, 0)};
    std::array<cplx, 4> t2{cplx(0, 1), cplx(1, 0), cplx(3, 0), cplx(-2, 0)};
    cplx direct{};
    const auto& ts = form_detail::tuples(2);
    for (size_t i = 0; i < ts.size(); ++i) {
        int a = ts[i][0], b = ts[i][1];
        direct += leading_value(f.c[i]) * (t1[a] * t2[b] - t1[b] * t2[a]);
    }
    CHECK(std::abs(evaluate(f, {t1, t2}) - direct) < 1e-13);
    CHECK_THROWS_AS((void)evaluate(f, {t1}), Error);
}
