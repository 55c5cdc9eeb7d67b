#pragma once

#include <vector>

#include "rolldist/linalg.hpp"

namespace rolldist {

// Differential forms of degree <= 3 on the coordinates (u, v, w1, w2),
// held pointwise: each component is a jet (or jet-valued vector), so the
// exterior derivative is exact through the carried jet order. Only
// strictly increasing index tuples are stored.
namespace form_detail {

inline constexpr int kCoords = 4;
inline constexpr int kMaxDegree = 3;

inline int comp_count(int degree) {
    static const int n[4] = {1, 4, 6, 4};
    return n[degree];
}

// Tuples in lexicographic order per degree.
inline const std::vector<std::vector<int>>& tuples(int degree) {
    static const std::vector<std::vector<std::vector<int>>> all = {
        {{}},
        {{0}, {1}, {2}, {3}},
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}},
    };
    return all[degree];
}

inline int tuple_index(int degree, const std::vector<int>& t) {
    const auto& ts = tuples(degree);
    for (size_t i = 0; i < ts.size(); ++i)
        if (ts[i] == t) return static_cast<int>(i);
    return -1;
}

// Merge two strictly increasing tuples; returns the permutation sign and
// fills `out`, or returns 0 on index collision.
inline int merge_tuples(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out) {
    out = a;
    int sign = 1;
    for (int x : b) {
        size_t pos = 0;
        while (pos < out.size() && out[pos] < x) ++pos;
        if (pos < out.size() && out[pos] == x) return 0;
        // moving x past (out.size() - pos) entries from the right
        if ((out.size() - pos) % 2 == 1) sign = -sign;
        out.insert(out.begin() + pos, x);
    }
    return sign;
}

} // namespace form_detail

template <class V>
struct Form {
    int degree = 0;
    std::vector<V> c;

    explicit Form(int deg = 0)
        : degree(validate(deg)), c(form_detail::comp_count(deg)) {}

    static Form zero(int deg) { return Form(deg); }

    V& comp(const std::vector<int>& t) { return c[form_detail::tuple_index(degree, t)]; }
    const V& comp(const std::vector<int>& t) const {
        return c[form_detail::tuple_index(degree, t)];
    }

    Form operator-() const {
        Form r(degree);
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = -c[i];
        return r;
    }
    friend Form operator+(const Form& a, const Form& b) {
        Form r(a.require_same(b));
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend Form operator-(const Form& a, const Form& b) {
        Form r(a.require_same(b));
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    template <class S>
    friend Form operator*(const Form& a, const S& s) {
        Form r(a.degree);
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] * s;
        return r;
    }
    template <class S>
    friend Form operator*(const S& s, const Form& a) {
        return a * s;
    }
    template <class S>
    friend Form operator/(const Form& a, const S& s) {
        Form r(a.degree);
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] / s;
        return r;
    }

    double max_coeff_magnitude() const {
        double m = 0.0;
        for (const auto& x : c) m = std::max(m, coeff_mag(x));
        return m;
    }

private:
    static int validate(int deg) {
        if (deg < 0 || deg > form_detail::kMaxDegree)
            fail(ErrorKind::DegreeOverflow, "form degree out of range");
        return deg;
    }
    int require_same(const Form& o) const {
        if (degree != o.degree)
            fail(ErrorKind::DegreeOverflow, "form degrees do not match");
        return degree;
    }
    static double coeff_mag(const Jet& j) { return magnitude(j); }
    static double coeff_mag(const Vec3<Jet>& v) { return max_magnitude(v); }
};

using ScalarForm = Form<Jet>;
using VectorForm = Form<Vec3<Jet>>;

// Graded product with an arbitrary bilinear pairing on values.
template <class A, class B, class P>
auto wedge_with(const Form<A>& f, const Form<B>& g, P&& pair)
    -> Form<decltype(pair(f.c[0], g.c[0]))> {
    using namespace form_detail;
    int deg = f.degree + g.degree;
    if (deg > kMaxDegree)
        fail(ErrorKind::DegreeOverflow, "wedge result exceeds maximum degree");
    Form<decltype(pair(f.c[0], g.c[0]))> r(deg);
    const auto& tf = tuples(f.degree);
    const auto& tg = tuples(g.degree);
    std::vector<int> merged;
    for (size_t i = 0; i < tf.size(); ++i)
        for (size_t j = 0; j < tg.size(); ++j) {
            int sign = merge_tuples(tf[i], tg[j], merged);
            if (sign == 0) continue;
            auto term = pair(f.c[i], g.c[j]);
            int k = tuple_index(deg, merged);
            if (sign > 0)
                r.c[k] = r.c[k] + term;
            else
                r.c[k] = r.c[k] - term;
        }
    return r;
}

inline ScalarForm wedge(const ScalarForm& f, const ScalarForm& g) {
    return wedge_with(f, g, [](const Jet& a, const Jet& b) { return a * b; });
}

inline VectorForm wedge(const ScalarForm& f, const VectorForm& g) {
    return wedge_with(f, g, [](const Jet& a, const JVec3& b) { return b * a; });
}

inline VectorForm wedge(const VectorForm& f, const ScalarForm& g) {
    return wedge_with(f, g, [](const JVec3& a, const Jet& b) { return a * b; });
}

// f^T ^ g for vector-valued forms (dot on values, wedge on form parts).
inline ScalarForm dot_wedge(const VectorForm& f, const VectorForm& g) {
    return wedge_with(f, g, [](const JVec3& a, const JVec3& b) { return dot(a, b); });
}

// f x^ g: cross on values, wedge on form parts; symmetric on 1-forms.
inline VectorForm cross_wedge(const VectorForm& f, const VectorForm& g) {
    return wedge_with(f, g, [](const JVec3& a, const JVec3& b) { return cross(a, b); });
}

namespace form_detail {

inline Jet deriv(const Jet& j, int var) { return j.derivative(var); }
inline JVec3 deriv(const JVec3& v, int var) {
    return {v[0].derivative(var), v[1].derivative(var), v[2].derivative(var)};
}

} // namespace form_detail

// Exterior derivative over all four coordinates.
// For fields constant in w1, w2 the w-partials vanish and this is the
// plain surface differential; n_coords = 2 restricts explicitly.
template <class V>
Form<V> exterior_derivative(const Form<V>& f, int n_coords = form_detail::kCoords) {
    using namespace form_detail;
    if (f.degree + 1 > kMaxDegree)
        fail(ErrorKind::DegreeOverflow, "exterior derivative exceeds maximum degree");
    Form<V> r(f.degree + 1);
    const auto& tf = tuples(f.degree);
    std::vector<int> merged;
    for (size_t i = 0; i < tf.size(); ++i) {
        for (int var = 0; var < n_coords; ++var) {
            std::vector<int> dvar{var};
            int sign = merge_tuples(dvar, tf[i], merged);
            if (sign == 0) continue;
            V term = deriv(f.c[i], var);
            int k = tuple_index(r.degree, merged);
            if (sign > 0)
                r.c[k] = r.c[k] + term;
            else
                r.c[k] = r.c[k] - term;
        }
    }
    return r;
}

// Differential of a 0-form value.
template <class V>
Form<V> differential(const V& v, int n_coords = form_detail::kCoords) {
    Form<V> f(0);
    f.c[0] = v;
    return exterior_derivative(f, n_coords);
}

// Substitutes dw1 -> phi1, dw2 -> phi2 (1-forms spanned by du, dv);
// the result is spanned by du, dv only.
ScalarForm reduce_mod(const ScalarForm& f, const ScalarForm& phi1, const ScalarForm& phi2);

// Alternating multilinear evaluation at the jet base point.
cplx evaluate(const ScalarForm& f, const std::vector<std::array<cplx, 4>>& tangents);
CVec3 evaluate(const VectorForm& f, const std::vector<std::array<cplx, 4>>& tangents);

} // namespace rolldist
