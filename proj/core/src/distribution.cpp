#include "rolldist/distribution.hpp"

#include <cmath>
#include <sstream>

namespace rolldist {

namespace {

constexpr double kGenericityFloor = 1e-6;

std::string point_string(const std::array<cplx, 4>& pt) {
    std::ostringstream os;
    os << "(u=" << pt[0].real() << ", v=" << pt[1].real() << ", w1=" << pt[2].real()
       << ", w2=" << pt[3].real() << ")";
    return os.str();
}

Jet triple(const JVec3& n, const JVec3& a, const JVec3& b) { return dot(n, cross(a, b)); }

// Surface (u,v) differential of a scalar jet.
ScalarForm d_surface(const Jet& j) {
    ScalarForm f(1);
    f.c[0] = j.derivative(0);
    f.c[1] = j.derivative(1);
    return f;
}

} // namespace

TangencyDistribution make_distribution(SurfacePatch x0, const std::array<std::string, 3>& v_text,
                                       const std::string& m_text,
                                       const std::vector<std::array<cplx, 4>>& samples,
                                       Bindings consts) {
    TangencyDistribution dist;
    dist.x0 = std::move(x0);
    dist.V = {parse(v_text[0]), parse(v_text[1]), parse(v_text[2])};
    dist.m = parse(m_text);
    dist.consts = std::move(consts);
    for (auto& [k, val] : dist.x0.consts) dist.consts.emplace(k, val);

    for (const auto& pt : samples) {
        DistData d = dist_at(dist, pt);
        double scale = std::max(1.0, max_magnitude(leading_value(d.V)));
        cplx nv = leading_value(dot(d.f0.normal, d.V));
        if (std::abs(nv) > 1e-9 * scale)
            fail(ErrorKind::TangencyViolated,
                 "V has a normal component at " + point_string(pt));
        if (magnitude(d.D2) < kGenericityFloor)
            fail(ErrorKind::GenericityViolated,
                 "N0^T(dV/dw2 x V) vanishes at " + point_string(pt));
        cplx iso = leading_value(dot(d.V, d.V) + d.m * d.m);
        if (std::abs(iso) < kGenericityFloor)
            fail(ErrorKind::IsotropicNormal, "isotropic normal field at " + point_string(pt));
    }
    return dist;
}

DistData dist_at(const TangencyDistribution& dist, const std::array<cplx, 4>& pt,
                 const VectorForm* omega, bool swap_roles, int order) {
    DistData d;
    d.pt = pt;
    d.swapped = swap_roles;
    d.w1_slot = swap_roles ? 3 : 2;
    d.w2_slot = swap_roles ? 2 : 3;
    d.f0 = frame_data(dist.x0, pt[0], pt[1], order);

    d.V = {eval_jet(dist.V[0], pt, order, dist.consts),
           eval_jet(dist.V[1], pt, order, dist.consts),
           eval_jet(dist.V[2], pt, order, dist.consts)};
    d.m = eval_jet(dist.m, pt, order, dist.consts);

    d.Vw1 = partial_of(d.V, d.w1_slot);
    d.Vw2 = partial_of(d.V, d.w2_slot);
    const JVec3& n0 = d.f0.normal;
    d.D1 = triple(n0, d.Vw1, d.V);
    d.D2 = triple(n0, d.Vw2, d.V);
    d.P12 = triple(n0, d.Vw1, d.Vw2);

    d.dN0 = differential_of(n0, 2);
    VectorForm dVx0 = differential_of(d.V + d.f0.pos, 2);
    d.VxdVx0 = ScalarForm(1);
    d.Vxdx0 = ScalarForm(1);
    VectorForm dx0 = differential_of(d.f0.pos, 2);
    for (int i = 0; i < 2; ++i) {
        d.VxdVx0.c[i] = triple(n0, d.V, dVx0.c[i]);
        d.Vxdx0.c[i] = triple(n0, d.V, dx0.c[i]);
    }

    if (omega)
        d.omega = *omega;
    else
        d.omega = VectorForm(1);
    d.womega = ScalarForm(1);
    for (int i = 0; i < 2; ++i)
        d.womega.c[i] = dot(d.V, cross(d.omega.c[i], n0) + d.dN0.c[i]);

    d.bracket = ScalarForm(1);
    for (int i = 0; i < 2; ++i) d.bracket.c[i] = d.VxdVx0.c[i] + d.m * d.womega.c[i];
    return d;
}

namespace {

void require_genericity(const DistData& d) {
    if (magnitude(d.D2) < kGenericityFloor)
        fail(ErrorKind::GenericityViolated,
             "N0^T(dV/dw2 x V) below threshold at " + point_string(d.pt));
}

void require_c2(const Jet& c2, const DistData& d) {
    if (magnitude(c2) < kGenericityFloor)
        fail(ErrorKind::CZero, "C2 vanishes at " + point_string(d.pt));
}

void require_m(const DistData& d) {
    if (magnitude(d.m) < kGenericityFloor)
        fail(ErrorKind::MZero, "m vanishes at " + point_string(d.pt));
}

} // namespace

ScalarForm dw2_form(const DistData& d) {
    require_genericity(d);
    ScalarForm r(1);
    r.c[0] = d.bracket.c[0] / d.D2;
    r.c[1] = d.bracket.c[1] / d.D2;
    r.c[d.w1_slot] = -(d.D1 / d.D2);
    return r;
}

ScalarForm dw2_direct_solve(const DistData& d) {
    const JVec3& n0 = d.f0.normal;
    JVec3 mvec = cross(d.V, n0) + n0 * d.m;
    Jet denom = dot(mvec, d.Vw2);
    if (magnitude(denom) < kGenericityFloor)
        fail(ErrorKind::GenericityViolated, "m^T dV/dw2 vanishes at " + point_string(d.pt));
    VectorForm dVx0 = differential_of(d.V + d.f0.pos, 2);
    ScalarForm r(1);
    for (int i = 0; i < 2; ++i)
        r.c[i] = -(dot(mvec, cross(d.omega.c[i], d.V) + dVx0.c[i])) / denom;
    r.c[d.w1_slot] = -(dot(mvec, d.Vw1) / denom);
    return r;
}

double dw2_oracle_residual(const DistData& d) {
    ScalarForm a = dw2_form(d);
    ScalarForm b = dw2_direct_solve(d);
    double r = 0.0;
    for (size_t i = 0; i < a.c.size(); ++i)
        r = std::max(r, std::abs(leading_value(a.c[i]) - leading_value(b.c[i])));
    return r;
}

SplitCoefficients split_coefficients(const DistData& d) {
    require_genericity(d);
    const JVec3& n0 = d.f0.normal;
    SplitCoefficients sc;

    VectorForm dVx0 = differential_of(d.V + d.f0.pos, 2);
    ScalarForm sw2(1); // N0^T[Vw2 x d(V+x0)]
    for (int i = 0; i < 2; ++i) sw2.c[i] = triple(n0, d.Vw2, dVx0.c[i]);
    ScalarForm half_curv = vec_dot_form(n0, cross_wedge(d.dN0, d.dN0)) * 0.5;
    Jet norm2 = d.m * d.m + dot(d.V, d.V);
    sc.A2 = (wedge(sw2, d.Vxdx0) / d.D2 + half_curv * norm2) / d.D2;

    VectorForm dV = differential_of(d.V, 2);
    ScalarForm w2dV(1); // N0^T(Vw2 x dV)
    for (int i = 0; i < 2; ++i) w2dV.c[i] = triple(n0, d.Vw2, dV.c[i]);
    Jet m_w2 = d.m.derivative(d.w2_slot);
    Jet m_w1 = d.m.derivative(d.w1_slot);
    sc.B2 = d_surface(d.m) + d.VxdVx0 * (m_w2 / d.D2) - w2dV * (d.m / d.D2);

    sc.C2 = (d.m * d.P12) / d.D2 - (m_w2 * d.D1) / d.D2 + m_w1;
    return sc;
}

ScalarForm compatibility_form(const DistData& d) {
    SplitCoefficients sc = split_coefficients(d);
    require_c2(sc.C2, d);
    ScalarForm lever = d.Vxdx0 * (d.P12 / (d.D2 * d.D2));
    return -sc.A2 + wedge(lever, sc.B2 / sc.C2);
}

double dw2_integrability_residual(const DistData& d) {
    SplitCoefficients sc = split_coefficients(d);
    ScalarForm phi2 = dw2_form(d);

    // Mechanical route: apply the full differential to the dw2 relation
    // and use the relation itself; dw1 stays free (identity slot).
    ScalarForm dw1(1);
    dw1.c[d.w1_slot] = Jet::constant(cplx(1.0, 0.0), Jet::kMaxOrder);
    ScalarForm lhs = d.swapped
                         ? reduce_mod(exterior_derivative(phi2, 4), phi2, dw1)
                         : reduce_mod(exterior_derivative(phi2, 4), dw1, phi2);

    // Collapsed route: the displayed 2-form in du, dv, dw1.
    ScalarForm lever = d.Vxdx0 * (d.P12 / (d.D2 * d.D2));
    ScalarForm rhs = -sc.A2 - wedge(lever, dw1) +
                     wedge(sc.B2 + dw1 * sc.C2, d.womega / d.D2);
    return (lhs - rhs).max_coeff_magnitude();
}

double compatibility_residual(const DistData& d) {
    ScalarForm f = compatibility_form(d);
    double r = 0.0;
    for (const auto& c : f.c) r = std::max(r, std::abs(leading_value(c)));
    return r;
}

cplx b1_closed_form(const DistData& d, bool use_v_components) {
    SplitCoefficients sc = split_coefficients(d);
    require_c2(sc.C2, d);
    require_m(d);
    int i = use_v_components ? 1 : 0;
    Jet num = sc.B2.c[i];
    Jet den = -(sc.C2 * d.VxdVx0.c[i]) / d.m + (d.P12 * d.Vxdx0.c[i]) / d.D2;
    double scale = std::max(1.0, magnitude(sc.C2) * magnitude(d.VxdVx0.c[i]));
    if (magnitude(den) < 1e-9 * scale)
        fail(ErrorKind::DegenerateB1Denominator,
             "B1 denominator vanishes at " + point_string(d.pt));
    return leading_value(num / den);
}

double b1_wedge_condition_residual(const DistData& d) {
    SplitCoefficients sc = split_coefficients(d);
    require_c2(sc.C2, d);
    require_m(d);
    ScalarForm g = -(d.VxdVx0 / d.m) + d.Vxdx0 * (d.P12 / (d.D2 * sc.C2));
    ScalarForm w = wedge(sc.B2, g);
    double r = 0.0;
    for (const auto& c : w.c) r = std::max(r, std::abs(leading_value(c)));
    return r;
}

Dw1Forms dw1_forms(const DistData& d, cplx b1) {
    SplitCoefficients sc = split_coefficients(d);
    require_c2(sc.C2, d);
    require_m(d);
    Dw1Forms f;
    ScalarForm lever = d.Vxdx0 * (d.P12 / (d.D2 * sc.C2));
    f.ansatz = -(sc.B2 / sc.C2) + (lever + d.womega) * b1;
    f.split = d.bracket * (b1 / leading_value(d.m));
    f.A1 = d.VxdVx0 * (b1 / leading_value(d.m));
    return f;
}

double splitting_residual(const DistData& d, cplx b1) {
    require_genericity(d);
    require_m(d);
    Dw1Forms f = dw1_forms(d, b1);
    // dw2 with dw1 substituted by the split form.
    ScalarForm dw2_sub = d.bracket / d.D2 - f.split * (d.D1 / d.D2);
    ScalarForm w = wedge(f.split, dw2_sub);
    double r = 0.0;
    for (const auto& c : w.c) r = std::max(r, std::abs(leading_value(c)));
    return r;
}

ExchangeResiduals exchange_covariance(const TangencyDistribution& dist,
                                      const std::array<cplx, 4>& pt, const VectorForm* omega) {
    DistData d = dist_at(dist, pt, omega, false);
    DistData ds = dist_at(dist, pt, omega, true);
    if (magnitude(d.D1) < kGenericityFloor || magnitude(d.D2) < kGenericityFloor)
        fail(ErrorKind::GenericityViolated,
             "both role triple products must be nonzero at " + point_string(pt));

    ExchangeResiduals r{};
    ScalarForm orig = compatibility_form(d);
    ScalarForm swapped = compatibility_form(ds);
    cplx ratio = leading_value(d.D2) / leading_value(d.D1);
    double rr = 0.0;
    for (size_t i = 0; i < orig.c.size(); ++i)
        rr = std::max(rr,
                      std::abs(leading_value(swapped.c[i]) - ratio * leading_value(orig.c[i])));
    r.ratio_law = rr;

    // Consistency of the two split forms: the swapped leaf form of dw2
    // must coincide with dw2 from the constraint, which pins
    // B1' D2 + D1 B1 = m.
    cplx b1 = b1_closed_form(d);
    cplx b1s = b1_closed_form(ds);
    r.b1_invariance =
        std::abs(b1s * leading_value(d.D2) + leading_value(d.D1) * b1 - leading_value(d.m));
    return r;
}

std::array<double, 2> frobenius_residual(const PfaffianSystem& sys,
                                         const std::array<cplx, 4>& pt) {
    auto phis = sys.phi(pt);
    std::array<double, 2> res{};
    for (int i = 0; i < 2; ++i) {
        ScalarForm dphi = exterior_derivative(phis[i], 4);
        ScalarForm reduced = reduce_mod(dphi, phis[0], phis[1]);
        double r = 0.0;
        for (const auto& c : reduced.c) r = std::max(r, std::abs(leading_value(c)));
        res[i] = r;
    }
    return res;
}

PfaffianSystem leaf_system(const TangencyDistribution& dist,
                           std::function<VectorForm(cplx, cplx)> omega_at) {
    PfaffianSystem sys;
    sys.phi = [dist, omega_at](const std::array<cplx, 4>& pt) -> std::array<ScalarForm, 2> {
        VectorForm omega(1);
        if (omega_at) omega = omega_at(pt[0], pt[1]);
        DistData d = dist_at(dist, pt, &omega);
        cplx b1 = b1_closed_form(d);
        Dw1Forms f = dw1_forms(d, b1);
        ScalarForm phi1 = f.split;
        ScalarForm phi2 = d.bracket / d.D2 - phi1 * (d.D1 / d.D2);
        return {phi1, phi2};
    };
    return sys;
}

namespace {

struct LeafState {
    cplx w1, w2;
};

LeafState rk4_step(const PfaffianSystem& sys, const std::array<cplx, 2>& p0,
                   const std::array<cplx, 2>& dir, double s, double h, const LeafState& y) {
    auto f = [&](double t, const LeafState& st) -> LeafState {
        std::array<cplx, 4> pt{p0[0] + dir[0] * (s + t), p0[1] + dir[1] * (s + t), st.w1, st.w2};
        auto phis = sys.phi(pt);
        cplx d1 = leading_value(phis[0].c[0]) * dir[0] + leading_value(phis[0].c[1]) * dir[1];
        cplx d2 = leading_value(phis[1].c[0]) * dir[0] + leading_value(phis[1].c[1]) * dir[1];
        return {d1, d2};
    };
    LeafState k1 = f(0.0, y);
    LeafState k2 = f(h / 2, {y.w1 + k1.w1 * (h / 2), y.w2 + k1.w2 * (h / 2)});
    LeafState k3 = f(h / 2, {y.w1 + k2.w1 * (h / 2), y.w2 + k2.w2 * (h / 2)});
    LeafState k4 = f(h, {y.w1 + k3.w1 * h, y.w2 + k3.w2 * h});
    return {y.w1 + (k1.w1 + 2.0 * k2.w1 + 2.0 * k3.w1 + k4.w1) * (h / 6),
            y.w2 + (k1.w2 + 2.0 * k2.w2 + 2.0 * k3.w2 + k4.w2) * (h / 6)};
}

} // namespace

LeafResult integrate_leaf(const PfaffianSystem& sys, const std::array<cplx, 4>& start,
                          const std::vector<std::array<cplx, 2>>& path, double step_tolerance) {
    LeafState y{start[2], start[3]};
    int steps = 0;
    for (size_t seg = 0; seg + 1 < path.size(); ++seg) {
        std::array<cplx, 2> p0 = path[seg];
        std::array<cplx, 2> dir{path[seg + 1][0] - p0[0], path[seg + 1][1] - p0[1]};
        double h = 0.1;
        double s = 0.0;
        while (s < 1.0 - 1e-12) {
            double hs = std::min(h, 1.0 - s);
            // Step doubling error control.
            LeafState full = rk4_step(sys, p0, dir, s, hs, y);
            LeafState half = rk4_step(sys, p0, dir, s, hs / 2, y);
            half = rk4_step(sys, p0, dir, s + hs / 2, hs / 2, half);
            double err = (std::abs(full.w1 - half.w1) + std::abs(full.w2 - half.w2)) / 15.0;
            if (err <= step_tolerance) {
                y = half;
                s += hs;
                ++steps;
                if (err < step_tolerance / 64 && h < 0.5) h *= 2;
            } else {
                h = hs / 2;
                if (h < 1e-12)
                    fail(ErrorKind::StepUnderflow, "leaf integration step underflow");
            }
        }
    }
    LeafResult r;
    r.w1 = y.w1;
    r.w2 = y.w2;
    r.steps = steps;
    bool closed = path.size() >= 2 && path.front() == path.back();
    r.holonomy = closed ? std::max(std::abs(y.w1 - start[2]), std::abs(y.w2 - start[3])) : 0.0;
    return r;
}

} // namespace rolldist
