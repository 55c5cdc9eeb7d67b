#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rolldist/expr.hpp"

using namespace rolldist;

namespace {

// First fundamental form coefficients (E, F, G) at a point.
std::array<cplx, 3> fundamental(const SurfacePatch& p, cplx u, cplx v) {
    JVec3 x = p.eval(u, v, 1);
    JVec3 xu{x[0].derivative(0), x[1].derivative(0), x[2].derivative(0)};
    JVec3 xv{x[0].derivative(1), x[1].derivative(1), x[2].derivative(1)};
    return {dot(xu, xu).value(), dot(xu, xv).value(), dot(xv, xv).value()};
}

} // namespace

TEST_CASE("parse/print round-trips the AST") {
    const char* samples[] = {
        "u + v*w1 - w2/3",
        "sin(u)*cosh(v) + exp(-u)",
        "(u + i*v)^3 - pi*w1",
        "cos(u)*cos(v) - 2^2",
        "-u - -v",
        "w1*(w2 + 1)/(u - 4)",
    };
    for (const char* s : samples) {
        ExprPtr e = parse(s);
        std::string canon = print(e);
        CHECK(same_ast(e, parse(canon)));
        CHECK(canon == print(parse(canon)));
    }
}

TEST_CASE("syntax errors carry a byte offset") {
    CHECK_THROWS_AS((void)parse("u + * v"), Error);
    try {
        (void)parse("u + * v");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SyntaxError);
        CHECK(std::string(e.what()).find("4") != std::string::npos);
    }
    CHECK_THROWS_AS((void)parse("sin u"), Error);
    CHECK_THROWS_AS((void)parse("u^v"), Error); // exponent must be an integer literal
    CHECK_THROWS_AS((void)parse(""), Error);
}

TEST_CASE("unknown identifiers are rejected at evaluation") {
    ExprPtr e = parse("u + bogus");
    CHECK_THROWS_AS((void)eval_value(e, {cplx(1, 0), {}, {}, {}}), Error);
    try {
        (void)eval_value(e, {cplx(1, 0), {}, {}, {}});
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::UnknownIdentifier);
    }
    // named constants resolve through bindings
    CHECK(std::abs(eval_value(e, {cplx(1, 0), {}, {}, {}}, {{"bogus", cplx(2, 0)}}) -
                   cplx(3, 0)) < 1e-15);
}

TEST_CASE("special constants") {
    CHECK(std::abs(eval_value(parse("i*i"), {}) - cplx(-1, 0)) < 1e-15);
    CHECK(std::abs(eval_value(parse("cos(pi)"), {}) - cplx(-1, 0)) < 1e-15);
}

TEST_CASE("builtin surfaces evaluate to the expected points") {
    SurfacePatch cat = builtin_surface("catenoid");
    JVec3 p = cat.eval(cplx(0, 0), cplx(0, 0), 1);
    CHECK(std::abs(p[0].value() - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(p[1].value()) < 1e-15);
    CHECK(std::abs(p[2].value()) < 1e-15);

    SurfacePatch sph = builtin_surface("sphere");
    JVec3 q = sph.eval(cplx(0.3, 0), cplx(-0.4, 0), 1);
    cplx r2 = q[0].value() * q[0].value() + q[1].value() * q[1].value() +
              q[2].value() * q[2].value();
    CHECK(std::abs(r2 - cplx(1, 0)) < 1e-14);

    CHECK_THROWS_AS((void)builtin_surface("catenoidd"), Error);
    CHECK(builtin_surface_names().size() >= 9);
}

TEST_CASE("associate family members are isometric to the catenoid") {
    SurfacePatch cat = builtin_surface("catenoid");
    for (double th : {0.3, 0.7, 1.1, 1.5}) {
        SurfacePatch assoc = builtin_surface("associate", {th});
        for (double u : {-0.8, 0.0, 0.9})
            for (double v : {-0.5, 0.4}) {
                auto a = fundamental(cat, cplx(u, 0), cplx(v, 0));
                auto b = fundamental(assoc, cplx(u, 0), cplx(v, 0));
                for (int k = 0; k < 3; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-12);
            }
    }
}

TEST_CASE("helicoid matches the quarter-turn associate") {
    SurfacePatch hel = builtin_surface("helicoid");
    SurfacePatch assoc = builtin_surface("associate", {std::acos(-1.0) / 2});
    JVec3 a = hel.eval(cplx(0.4, 0), cplx(0.6, 0), 1);
    JVec3 b = assoc.eval(cplx(0.4, 0), cplx(0.6, 0), 1);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(a[k].value() - b[k].value()) < 1e-14);
}

TEST_CASE("rigid motion patches transform positions exactly") {
    SurfacePatch cat = builtin_surface("catenoid");
    double c = std::cos(0.8), s = std::sin(0.8);
    CMat3 q;
    q(0, 0) = c; q(0, 1) = -s;
    q(1, 0) = s; q(1, 1) = c;
    q(2, 2) = cplx(1, 0);
    CVec3 t{cplx(1, 0), cplx(-2, 0), cplx(0.5, 0)};
    SurfacePatch moved = rigid_motion_patch(cat, q, t);
    JVec3 x = cat.eval(cplx(0.3, 0), cplx(-0.2, 0), 1);
    JVec3 y = moved.eval(cplx(0.3, 0), cplx(-0.2, 0), 1);
    CVec3 expect = q * leading_value(x) + t;
    for (int k = 0; k < 3; ++k) CHECK(std::abs(y[k].value() - expect[k]) < 1e-14);
}
