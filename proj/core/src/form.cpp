#include "rolldist/form.hpp"

namespace rolldist {

namespace {

using form_detail::tuples;

// One basis 1-form after substitution: either a coordinate differential
// du/dv or a replacement 1-form.
ScalarForm basis_after_substitution(int coord, const ScalarForm& phi1, const ScalarForm& phi2,
                                    int order) {
    if (coord == 2) return phi1;
    if (coord == 3) return phi2;
    ScalarForm b(1);
    b.c[coord] = Jet::constant(cplx(1.0, 0.0), order);
    return b;
}

int min_order(const ScalarForm& f) {
    int r = Jet::kMaxOrder;
    for (const auto& j : f.c) r = std::min(r, j.order());
    return r;
}

} // namespace

ScalarForm reduce_mod(const ScalarForm& f, const ScalarForm& phi1, const ScalarForm& phi2) {
    if (f.degree == 0) return f;
    int order = std::min({min_order(f), min_order(phi1), min_order(phi2)});
    ScalarForm r(f.degree);
    const auto& tf = tuples(f.degree);
    for (size_t i = 0; i < tf.size(); ++i) {
        ScalarForm prod = basis_after_substitution(tf[i][0], phi1, phi2, order);
        for (size_t k = 1; k < tf[i].size(); ++k)
            prod = wedge(prod, basis_after_substitution(tf[i][k], phi1, phi2, order));
        r = r + prod * f.c[i];
    }
    return r;
}

namespace {

template <class V>
auto evaluate_impl(const Form<V>& f, const std::vector<std::array<cplx, 4>>& tangents) {
    using R = decltype(leading_value(f.c[0]));
    if (static_cast<int>(tangents.size()) != f.degree)
        fail(ErrorKind::ArityMismatch, "tangent vector count does not match form degree");
    const auto& tf = tuples(f.degree);
    R acc{};
    for (size_t i = 0; i < tf.size(); ++i) {
        const auto& t = tf[i];
        cplx minor;
        switch (f.degree) {
            case 0:
                minor = cplx(1.0, 0.0);
                break;
            case 1:
                minor = tangents[0][t[0]];
                break;
            case 2:
                minor = tangents[0][t[0]] * tangents[1][t[1]] -
                        tangents[0][t[1]] * tangents[1][t[0]];
                break;
            default: { // degree 3
                cplx m00 = tangents[0][t[0]], m01 = tangents[0][t[1]], m02 = tangents[0][t[2]];
                cplx m10 = tangents[1][t[0]], m11 = tangents[1][t[1]], m12 = tangents[1][t[2]];
                cplx m20 = tangents[2][t[0]], m21 = tangents[2][t[1]], m22 = tangents[2][t[2]];
                minor = m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
                        m02 * (m10 * m21 - m11 * m20);
                break;
            }
        }
        acc = acc + leading_value(f.c[i]) * minor;
    }
    return acc;
}

} // namespace

cplx evaluate(const ScalarForm& f, const std::vector<std::array<cplx, 4>>& tangents) {
    return evaluate_impl(f, tangents);
}

CVec3 evaluate(const VectorForm& f, const std::vector<std::array<cplx, 4>>& tangents) {
    return evaluate_impl(f, tangents);
}

} // namespace rolldist
