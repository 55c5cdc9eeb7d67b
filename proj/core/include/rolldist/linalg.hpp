#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <type_traits>

#include "rolldist/jet.hpp"

namespace rolldist {

// Bilinear (non-Hermitian) 3-vector algebra over a commutative scalar
// ring T — either cplx or Jet. No conjugation anywhere.
template <class T>
struct Vec3 {
    std::array<T, 3> e;

    Vec3() : e{T{}, T{}, T{}} {}
    Vec3(T a, T b, T c) : e{std::move(a), std::move(b), std::move(c)} {}

    T& operator[](int i) { return e[i]; }
    const T& operator[](int i) const { return e[i]; }

    Vec3 operator-() const { return {-e[0], -e[1], -e[2]}; }
    friend Vec3 operator+(const Vec3& a, const Vec3& b) {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) {
        return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    }
    template <class S>
    friend Vec3 operator*(const Vec3& a, const S& s) {
        return {a[0] * s, a[1] * s, a[2] * s};
    }
    template <class S>
    friend Vec3 operator*(const S& s, const Vec3& a) {
        return {a[0] * s, a[1] * s, a[2] * s};
    }
    template <class S>
    friend Vec3 operator/(const Vec3& a, const S& s) {
        return {a[0] / s, a[1] / s, a[2] / s};
    }
};

using CVec3 = Vec3<cplx>;
using JVec3 = Vec3<Jet>;

inline CVec3 leading_value(const JVec3& v) {
    return {v[0].value(), v[1].value(), v[2].value()};
}

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

template <class T>
double max_magnitude(const Vec3<T>& v) {
    return std::max({magnitude(v[0]), magnitude(v[1]), magnitude(v[2])});
}

template <class T>
struct Mat3 {
    // Row-major.
    std::array<T, 9> e;

    Mat3() : e{T{}, T{}, T{}, T{}, T{}, T{}, T{}, T{}, T{}} {}

    T& operator()(int r, int c) { return e[3 * r + c]; }
    const T& operator()(int r, int c) const { return e[3 * r + c]; }

    static Mat3 identity() {
        Mat3 m;
        m(0, 0) = one();
        m(1, 1) = one();
        m(2, 2) = one();
        return m;
    }

    static Mat3 from_columns(const Vec3<T>& c0, const Vec3<T>& c1, const Vec3<T>& c2) {
        Mat3 m;
        for (int r = 0; r < 3; ++r) {
            m(r, 0) = c0[r];
            m(r, 1) = c1[r];
            m(r, 2) = c2[r];
        }
        return m;
    }

    Vec3<T> column(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }

    Mat3 transposed() const {
        Mat3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m(r, c) = (*this)(c, r);
        return m;
    }

    Mat3 operator-() const {
        Mat3 m;
        for (int i = 0; i < 9; ++i) m.e[i] = -e[i];
        return m;
    }
    friend Mat3 operator+(const Mat3& a, const Mat3& b) {
        Mat3 m;
        for (int i = 0; i < 9; ++i) m.e[i] = a.e[i] + b.e[i];
        return m;
    }
    friend Mat3 operator-(const Mat3& a, const Mat3& b) {
        Mat3 m;
        for (int i = 0; i < 9; ++i) m.e[i] = a.e[i] - b.e[i];
        return m;
    }
    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                m(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
        return m;
    }
    friend Vec3<T> operator*(const Mat3& a, const Vec3<T>& v) {
        return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2],
                a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
                a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
    }
    template <class S>
    friend Mat3 operator*(const Mat3& a, const S& s) {
        Mat3 m;
        for (int i = 0; i < 9; ++i) m.e[i] = a.e[i] * s;
        return m;
    }

private:
    static T one() {
        if constexpr (std::is_same_v<T, Jet>)
            return Jet::constant(cplx(1.0, 0.0));
        else
            return T(1.0);
    }
};

using CMat3 = Mat3<cplx>;
using JMat3 = Mat3<Jet>;

inline CMat3 leading_value(const JMat3& m) {
    CMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = m(i, j).value();
    return r;
}

// The isometry alpha : C^3 -> o_3(C), alpha(x) y = x cross y.
template <class T>
Mat3<T> alpha(const Vec3<T>& x) {
    Mat3<T> m;
    m(0, 1) = -x[2];
    m(0, 2) = x[1];
    m(1, 0) = x[2];
    m(1, 2) = -x[0];
    m(2, 0) = -x[1];
    m(2, 1) = x[0];
    return m;
}

template <class T>
T det(const Mat3<T>& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

template <class T>
Mat3<T> adjugate(const Mat3<T>& m) {
    Mat3<T> a;
    a(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    a(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    a(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    a(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    a(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    a(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    a(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    a(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    a(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return a;
}

template <class T>
double max_magnitude(const Mat3<T>& m) {
    double r = 0.0;
    for (const auto& x : m.e) r = std::max(r, magnitude(x));
    return r;
}

// Degeneracy tolerance relative to the largest input magnitude, with an
// absolute floor of 1e-14.
inline double degeneracy_tolerance(double scale) {
    return std::max(1e-14, 1e-12 * scale);
}

// inverse by adjugate/determinant; fixed size, no pivoting heuristics.
template <class T>
Mat3<T> inverse(const Mat3<T>& m) {
    T d = det(m);
    double scale = max_magnitude(m);
    if (magnitude(d) < degeneracy_tolerance(scale * scale * scale))
        fail(ErrorKind::SingularFrame, "matrix is numerically singular");
    Mat3<T> a = adjugate(m);
    Mat3<T> r;
    for (int i = 0; i < 9; ++i) r.e[i] = a.e[i] / d;
    return r;
}

// Solve R * source_i = target_i for the three given column pairs.
// Throws SingularFrame when the source frame is degenerate.
template <class T>
Mat3<T> frame_solve(const Mat3<T>& source, const Mat3<T>& target) {
    return target * inverse(source);
}

// Residual of the identity
//   a^T w1 ^ b^T w2 = (a x b)^T (w1 x^ w2) + b^T w1 ^ a^T w2
// for 1-forms given by their du,dv coefficient vectors, compared as
// du^dv coefficients.
inline double check_fund_identity(const CVec3& a, const CVec3& b,
                                  const CVec3& w1u, const CVec3& w1v,
                                  const CVec3& w2u, const CVec3& w2v) {
    cplx lhs = dot(a, w1u) * dot(b, w2v) - dot(a, w1v) * dot(b, w2u);
    CVec3 cw = cross(w1u, w2v) - cross(w1v, w2u); // (w1 x^ w2) on du^dv
    cplx rhs = dot(cross(a, b), cw) + (dot(b, w1u) * dot(a, w2v) - dot(b, w1v) * dot(a, w2u));
    return std::abs(lhs - rhs);
}

} // namespace rolldist
