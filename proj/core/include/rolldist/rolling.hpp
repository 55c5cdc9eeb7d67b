#pragma once

#include "rolldist/expr.hpp"
#include "rolldist/form.hpp"

namespace rolldist {

// One surface evaluated at a point: position jets plus the derived
// normal data. Position carries `order`, the normal one order less.
struct FrameData {
    JVec3 pos;
    JVec3 du, dv;
    Jet cross_norm; // |du x dv|, principal sqrt branch
    JVec3 normal;
};

// Throws IsotropicMetric on the locus of degenerate induced metric.
FrameData frame_data(const SurfacePatch& patch, cplx u, cplx v, int order = 3);

// Unit normal value at a point.
CVec3 unit_normal(const SurfacePatch& patch, cplx u, cplx v);

// Gauss curvature via (1/2) dN x^ dN = K |du x dv| N du^dv.
cplx gauss_curvature(const SurfacePatch& patch, cplx u, cplx v);

struct RollingPair {
    SurfacePatch x0;
    SurfacePatch x;
};

// Rolling data at one parameter point: rotation R with det R = 1,
// translation t, and the flat connection form
// omega = R^{-1}(N x dN) - N0 x dN0.
struct RollingData {
    FrameData f0, f1;
    JMat3 R, Rinv;
    JVec3 t;
    VectorForm dx0;   // 1-form, du/dv coefficients
    VectorForm dN0;
    VectorForm omega;
    int normal_sign;  // sign chosen for the N0 frame column
};

RollingData roll_at(const RollingPair& pair, cplx u, cplx v, int order = 3);

// Max abs difference of first fundamental forms at a point.
double isometry_residual(const RollingPair& pair, cplx u, cplx v);

// R^T R - I and det R - 1.
double rotation_residual(const RollingData& d);

// dt + dR x0 as a 1-form.
double translation_residual(const RollingData& d);

// alpha(omega) - R^{-1} dR, per coordinate.
double alpha_omega_residual(const RollingData& d);

struct FlatnessResiduals {
    double curvature;  // d omega + (1/2) omega x^ omega
    double tangency;   // omega x^ dx0
    double normality;  // N0^T omega
    double max() const { return std::max({curvature, tangency, normality}); }
};

FlatnessResiduals flatness_residuals(const RollingData& d, const VectorForm& omega);

inline FlatnessResiduals flatness_residuals(const RollingData& d) {
    return flatness_residuals(d, d.omega);
}

// Difference of second fundamental forms, s = N0^T(omega x dx0).
struct SecondFormDifference {
    cplx s11, s12, s21, s22;
};

SecondFormDifference second_form_difference(const RollingData& d);

// Rebuilds omega from s via the tangential-coefficient formula; returns
// the reconstructed form (values only meaningful at the base point).
VectorForm reconstruct_omega(const RollingData& d, const SecondFormDifference& s);

double omega_reconstruction_residual(const RollingData& d);

// (1/2) omega x^ omega - (dN0^T ^ omega) N0.
double gauss_identity_residual(const RollingData& d, const VectorForm& omega);

inline double gauss_identity_residual(const RollingData& d) {
    return gauss_identity_residual(d, d.omega);
}

// omega' = -omega - 2 N0 x dN0, the connection of the other-face rolling
// R' = R (I - 2 N0 N0^T).
VectorForm other_face_form(const RollingData& d);

double other_face_residual(const RollingData& d);

// R^{-1} dR N0 - (R^{-1} dN - dN0).
double secoi_residual(const RollingData& d);

// Symmetrization of dx0^T (R^{-1}dR) dx0 over its three 1-form slots.
double dx0_symmetric_residual(const RollingData& d);

// The 1-form a with a^T . dx0 = 0 (symmetric product), spanned by the
// tangent frame: a = (F du - E dv) x0_u-part etc.; unique up to scale.
VectorForm symmetric_kernel_form(const FrameData& f);

// max |a^T (.) dx0| over the three symmetric components.
double symmetric_product_residual(const FrameData& f, const VectorForm& a);

// a^T ^ omega coefficient on du^dv.
cplx one_form_wedge_omega(const VectorForm& a, const VectorForm& omega);

// Helpers shared with the distributions module.
VectorForm vec_cross_form(const JVec3& a, const VectorForm& f);
ScalarForm vec_dot_form(const JVec3& a, const VectorForm& f);
VectorForm mat_apply_form(const JMat3& m, const VectorForm& f);
VectorForm differential_of(const JVec3& v, int n_coords);
JVec3 partial_of(const JVec3& v, int var);

} // namespace rolldist
