#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <random>

#include "rolldist/linalg.hpp"

using namespace rolldist;

namespace {

std::mt19937_64 rng(12345);

cplx rand_c() {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return cplx(d(rng), d(rng));
}

CVec3 rand_v() { return {rand_c(), rand_c(), rand_c()}; }

CMat3 rand_m() {
    CMat3 m;
    for (auto& x : m.e) x = rand_c();
    return m;
}

double mat_diff(const CMat3& a, const CMat3& b) { return max_magnitude(a - b); }

} // namespace

TEST_CASE("bilinear dot has no conjugation") {
    CVec3 iso{cplx(1, 0), cplx(0, 1), cplx(0, 0)};
    CHECK(std::abs(dot(iso, iso)) == doctest::Approx(0.0));
}

TEST_CASE("cross/dot identities on random complex samples") {
    for (int k = 0; k < 1000; ++k) {
        CVec3 a = rand_v(), b = rand_v(), c = rand_v();
        // antisymmetry and orthogonality of the triple product
        CHECK(std::abs(dot(a, cross(a, b))) < 1e-12);
        CHECK(std::abs(dot(c, cross(a, b)) + dot(c, cross(b, a))) < 1e-12);
        CHECK(std::abs(dot(c, cross(a, b)) - dot(a, cross(b, c))) < 1e-12);
        // Grassmann expansion
        CVec3 lhs = cross(a, cross(b, c));
        CVec3 rhs = b * dot(a, c) - c * dot(a, b);
        CHECK(max_magnitude(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("alpha is the cross-product isometry") {
    CVec3 e3{cplx(0, 0), cplx(0, 0), cplx(1, 0)};
    CMat3 a3 = alpha(e3);
    CHECK(std::abs(a3(0, 1) - cplx(-1, 0)) == doctest::Approx(0.0));
    CHECK(std::abs(a3(1, 0) - cplx(1, 0)) == doctest::Approx(0.0));
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (!((r == 0 && c == 1) || (r == 1 && c == 0)))
                CHECK(std::abs(a3(r, c)) == doctest::Approx(0.0));

    for (int k = 0; k < 200; ++k) {
        CVec3 x = rand_v(), y = rand_v();
        CHECK(max_magnitude(alpha(x) * y - cross(x, y)) < 1e-12);
        // homomorphism onto the commutator
        CMat3 lhs = alpha(cross(x, y));
        CMat3 rhs = alpha(x) * alpha(y) - alpha(y) * alpha(x);
        CHECK(mat_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("fundamental 1-form identity on random samples") {
    auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < 1000; ++k) {
        double r = check_fund_identity(rand_v(), rand_v(), rand_v(), rand_v(), rand_v(),
                                       rand_v());
        CHECK(r < 1e-12);
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(dt < 1.0);
}

TEST_CASE("inverse and frame_solve") {
    for (int k = 0; k < 100; ++k) {
        CMat3 m = rand_m();
        if (magnitude(det(m)) < 1e-3) continue;
        CHECK(mat_diff(m * inverse(m), CMat3::identity()) < 1e-10);
        CMat3 t = rand_m();
        CMat3 r = frame_solve(m, t);
        CHECK(mat_diff(r * m, t) < 1e-10);
    }
}

TEST_CASE("singular matrix is rejected") {
    CMat3 m; // zero
    CHECK_THROWS_AS((void)inverse(m), Error);
    try {
        (void)inverse(m);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularFrame);
    }
}

TEST_CASE("determinant of a product") {
    for (int k = 0; k < 100; ++k) {
        CMat3 a = rand_m(), b = rand_m();
        CHECK(std::abs(det(a * b) - det(a) * det(b)) < 1e-12);
    }
}
