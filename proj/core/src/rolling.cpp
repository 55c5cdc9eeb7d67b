#include "rolldist/rolling.hpp"

namespace rolldist {

VectorForm vec_cross_form(const JVec3& a, const VectorForm& f) {
    VectorForm r(f.degree);
    for (size_t i = 0; i < f.c.size(); ++i) r.c[i] = cross(a, f.c[i]);
    return r;
}

ScalarForm vec_dot_form(const JVec3& a, const VectorForm& f) {
    ScalarForm r(f.degree);
    for (size_t i = 0; i < f.c.size(); ++i) r.c[i] = dot(a, f.c[i]);
    return r;
}

VectorForm mat_apply_form(const JMat3& m, const VectorForm& f) {
    VectorForm r(f.degree);
    for (size_t i = 0; i < f.c.size(); ++i) r.c[i] = m * f.c[i];
    return r;
}

VectorForm differential_of(const JVec3& v, int n_coords) {
    VectorForm z(0);
    z.c[0] = v;
    return exterior_derivative(z, n_coords);
}

JVec3 partial_of(const JVec3& v, int var) {
    return {v[0].derivative(var), v[1].derivative(var), v[2].derivative(var)};
}

FrameData frame_data(const SurfacePatch& patch, cplx u, cplx v, int order) {
    FrameData f;
    f.pos = patch.eval(u, v, order);
    f.du = partial_of(f.pos, 0);
    f.dv = partial_of(f.pos, 1);
    JVec3 c = cross(f.du, f.dv);
    Jet n2 = dot(c, c);
    double scale = max_magnitude(f.du) * max_magnitude(f.dv);
    if (magnitude(n2) < degeneracy_tolerance(scale * scale))
        fail(ErrorKind::IsotropicMetric, "isotropic (degenerate) induced metric");
    f.cross_norm = sqrt(n2);
    f.normal = c / f.cross_norm;
    return f;
}

CVec3 unit_normal(const SurfacePatch& patch, cplx u, cplx v) {
    return leading_value(frame_data(patch, u, v, 2).normal);
}

cplx gauss_curvature(const SurfacePatch& patch, cplx u, cplx v) {
    FrameData f = frame_data(patch, u, v, 3);
    VectorForm dN = differential_of(f.normal, 2);
    VectorForm ww = cross_wedge(dN, dN); // = 2 K |du x dv| N du^dv
    JVec3 coeff = ww.comp({0, 1});
    return leading_value(dot(f.normal, coeff) / (f.cross_norm * 2.0));
}

double isometry_residual(const RollingPair& pair, cplx u, cplx v) {
    auto fund = [&](const SurfacePatch& p) {
        JVec3 pos = p.eval(u, v, 1);
        JVec3 pu = partial_of(pos, 0), pv = partial_of(pos, 1);
        return std::array<cplx, 3>{leading_value(dot(pu, pu)), leading_value(dot(pu, pv)),
                                   leading_value(dot(pv, pv))};
    };
    auto a = fund(pair.x0), b = fund(pair.x);
    return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

RollingData roll_at(const RollingPair& pair, cplx u, cplx v, int order) {
    RollingData d;
    d.f0 = frame_data(pair.x0, u, v, order);
    d.f1 = frame_data(pair.x, u, v, order);

    auto build = [&](int sign) {
        JMat3 source = JMat3::from_columns(d.f0.du, d.f0.dv, d.f0.normal * double(sign));
        JMat3 target = JMat3::from_columns(d.f1.du, d.f1.dv, d.f1.normal);
        return frame_solve(source, target);
    };
    d.normal_sign = 1;
    d.R = build(1);
    cplx dr = leading_value(det(d.R));
    if (std::abs(dr - 1.0) > std::abs(dr + 1.0)) {
        d.normal_sign = -1;
        d.R = build(-1);
    }
    d.Rinv = inverse(d.R);
    d.t = d.f1.pos - d.R * d.f0.pos;

    d.dx0 = differential_of(d.f0.pos, 2);
    d.dN0 = differential_of(d.f0.normal, 2);
    VectorForm dN = differential_of(d.f1.normal, 2);
    d.omega = mat_apply_form(d.Rinv, vec_cross_form(d.f1.normal, dN)) -
              vec_cross_form(d.f0.normal, d.dN0);
    return d;
}

double rotation_residual(const RollingData& d) {
    JMat3 g = d.R.transposed() * d.R;
    double r = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            cplx want = (i == j) ? cplx(1.0, 0.0) : cplx{};
            r = std::max(r, std::abs(leading_value(g(i, j)) - want));
        }
    r = std::max(r, std::abs(leading_value(det(d.R)) - 1.0));
    return r;
}

namespace {

// Matrix-valued 1-form coefficients of dR.
std::array<JMat3, 2> matrix_differential(const JMat3& m) {
    std::array<JMat3, 2> d;
    for (int var = 0; var < 2; ++var)
        for (int i = 0; i < 9; ++i) d[var].e[i] = m.e[i].derivative(var);
    return d;
}

double form_value_residual(const VectorForm& f) {
    double r = 0.0;
    for (const auto& c : f.c) r = std::max(r, max_magnitude(leading_value(c)));
    return r;
}

} // namespace

double translation_residual(const RollingData& d) {
    VectorForm dt = differential_of(d.t, 2);
    auto dR = matrix_differential(d.R);
    double r = 0.0;
    for (int var = 0; var < 2; ++var) {
        CVec3 res = leading_value(dt.c[var] + dR[var] * d.f0.pos);
        r = std::max(r, max_magnitude(res));
    }
    return r;
}

double alpha_omega_residual(const RollingData& d) {
    auto dR = matrix_differential(d.R);
    double r = 0.0;
    for (int var = 0; var < 2; ++var) {
        JMat3 lhs = alpha(d.omega.c[var]);
        JMat3 rhs = d.Rinv * dR[var];
        for (int i = 0; i < 9; ++i)
            r = std::max(r, std::abs(leading_value(lhs.e[i]) - leading_value(rhs.e[i])));
    }
    return r;
}

FlatnessResiduals flatness_residuals(const RollingData& d, const VectorForm& omega) {
    FlatnessResiduals res;
    VectorForm curv = exterior_derivative(omega, 2) + cross_wedge(omega, omega) * 0.5;
    res.curvature = form_value_residual(curv);
    res.tangency = form_value_residual(cross_wedge(omega, d.dx0));
    ScalarForm normal = vec_dot_form(d.f0.normal, omega);
    double n = 0.0;
    for (const auto& c : normal.c) n = std::max(n, std::abs(leading_value(c)));
    res.normality = n;
    return res;
}

SecondFormDifference second_form_difference(const RollingData& d) {
    SecondFormDifference s;
    const JVec3& n0 = d.f0.normal;
    s.s11 = leading_value(dot(n0, cross(d.omega.c[0], d.f0.du)));
    s.s12 = leading_value(dot(n0, cross(d.omega.c[0], d.f0.dv)));
    s.s21 = leading_value(dot(n0, cross(d.omega.c[1], d.f0.du)));
    s.s22 = leading_value(dot(n0, cross(d.omega.c[1], d.f0.dv)));
    return s;
}

VectorForm reconstruct_omega(const RollingData& d, const SecondFormDifference& s) {
    VectorForm w(1);
    w.c[0] = (d.f0.du * s.s12 - d.f0.dv * s.s11) / d.f0.cross_norm;
    w.c[1] = (d.f0.du * s.s22 - d.f0.dv * s.s21) / d.f0.cross_norm;
    return w;
}

double omega_reconstruction_residual(const RollingData& d) {
    SecondFormDifference s = second_form_difference(d);
    VectorForm w = reconstruct_omega(d, s);
    double r = 0.0;
    for (int var = 0; var < 2; ++var)
        r = std::max(r, max_magnitude(leading_value(w.c[var]) - leading_value(d.omega.c[var])));
    return r;
}

double gauss_identity_residual(const RollingData& d, const VectorForm& omega) {
    VectorForm lhs = cross_wedge(omega, omega) * 0.5;
    ScalarForm sc = dot_wedge(d.dN0, omega);
    VectorForm rhs(2);
    for (size_t i = 0; i < rhs.c.size(); ++i) rhs.c[i] = d.f0.normal * sc.c[i];
    return form_value_residual(lhs - rhs);
}

VectorForm other_face_form(const RollingData& d) {
    return -d.omega - vec_cross_form(d.f0.normal, d.dN0) * 2.0;
}

double other_face_residual(const RollingData& d) {
    // R' = R (I - 2 N0 N0^T); alpha(omega') must match R'^{-1} dR'.
    const JVec3& n0 = d.f0.normal;
    JMat3 refl = JMat3::identity();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) refl(i, j) = refl(i, j) - n0[i] * n0[j] * 2.0;
    JMat3 rp = d.R * refl;
    JMat3 rpinv = inverse(rp);
    auto drp = matrix_differential(rp);
    VectorForm wp = other_face_form(d);
    double r = 0.0;
    for (int var = 0; var < 2; ++var) {
        JMat3 lhs = alpha(wp.c[var]);
        JMat3 rhs = rpinv * drp[var];
        for (int i = 0; i < 9; ++i)
            r = std::max(r, std::abs(leading_value(lhs.e[i]) - leading_value(rhs.e[i])));
    }
    return r;
}

double secoi_residual(const RollingData& d) {
    auto dR = matrix_differential(d.R);
    VectorForm dN = differential_of(d.f1.normal, 2);
    VectorForm dN0 = d.dN0;
    double r = 0.0;
    for (int var = 0; var < 2; ++var) {
        CVec3 lhs = leading_value((d.Rinv * dR[var]) * d.f0.normal);
        CVec3 rhs = leading_value(d.Rinv * dN.c[var] - dN0.c[var]);
        r = std::max(r, max_magnitude(lhs - rhs));
    }
    return r;
}

double dx0_symmetric_residual(const RollingData& d) {
    auto dR = matrix_differential(d.R);
    std::array<JMat3, 2> m{d.Rinv * dR[0], d.Rinv * dR[1]};
    std::array<JVec3, 2> x{d.f0.du, d.f0.dv};
    // t_{ijk} = x_i^T M_j x_k, fully symmetrized over (i,j,k).
    double r = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                cplx sym{};
                int idx[3] = {i, j, k};
                int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
                for (auto& p : perms) {
                    int a = idx[p[0]], b = idx[p[1]], c = idx[p[2]];
                    sym += leading_value(dot(x[a], m[b] * x[c]));
                }
                r = std::max(r, std::abs(sym / 6.0));
            }
    return r;
}

VectorForm symmetric_kernel_form(const FrameData& f) {
    Jet e = dot(f.du, f.du);
    Jet ff = dot(f.du, f.dv);
    Jet g = dot(f.dv, f.dv);
    VectorForm a(1);
    a.c[0] = f.du * ff - f.dv * e;
    a.c[1] = f.du * g - f.dv * ff;
    return a;
}

double symmetric_product_residual(const FrameData& f, const VectorForm& a) {
    cplx auu = leading_value(dot(a.c[0], f.du));
    cplx avv = leading_value(dot(a.c[1], f.dv));
    cplx mix = leading_value(dot(a.c[0], f.dv) + dot(a.c[1], f.du)) / 2.0;
    return std::max({std::abs(auu), std::abs(avv), std::abs(mix)});
}

cplx one_form_wedge_omega(const VectorForm& a, const VectorForm& omega) {
    return leading_value(dot(a.c[0], omega.c[1]) - dot(a.c[1], omega.c[0]));
}

} // namespace rolldist
