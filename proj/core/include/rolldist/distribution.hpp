#pragma once

#include <functional>
#include <optional>

#include "rolldist/rolling.hpp"

namespace rolldist {

// 4-dimensional distribution of contact elements with the symmetry of
// the tangency configuration: centers x0 + V with N0^T V = 0, normals
// m = V x N0 + m_scalar N0.
struct TangencyDistribution {
    SurfacePatch x0;
    std::array<ExprPtr, 3> V;
    ExprPtr m;
    Bindings consts;
};

// Builds a distribution from expression text and validates tangency,
// genericity and non-isotropy at the given sample points.
TangencyDistribution make_distribution(SurfacePatch x0, const std::array<std::string, 3>& v_text,
                                       const std::string& m_text,
                                       const std::vector<std::array<cplx, 4>>& samples,
                                       Bindings consts = {});

// Everything the section-3 formulas consume, evaluated at one point
// (u, v, w1, w2) for one connection form omega (null pointer = rigid
// rolling, omega = 0). `swap_roles` exchanges w1 and w2 in every
// formula that distinguishes them.
struct DistData {
    FrameData f0;
    std::array<cplx, 4> pt;
    JVec3 V;
    Jet m;
    JVec3 Vw1, Vw2;        // role-adjusted partials of V
    Jet D1;                // N0^T(Vw1 x V)
    Jet D2;                // N0^T(Vw2 x V)
    Jet P12;               // N0^T(Vw1 x Vw2)
    VectorForm dN0;        // surface differential
    ScalarForm VxdVx0;     // N0^T[V x d(V + x0)]
    ScalarForm Vxdx0;      // N0^T(V x dx0)
    ScalarForm womega;     // V^T(omega x N0 + dN0)
    ScalarForm bracket;    // VxdVx0 + m * womega
    VectorForm omega;
    bool swapped = false;
    int w1_slot = 2, w2_slot = 3;
};

DistData dist_at(const TangencyDistribution& dist, const std::array<cplx, 4>& pt,
                 const VectorForm* omega = nullptr, bool swap_roles = false, int order = 3);

// Right side of the leaf equation for dw2: a 1-form with du, dv, dw1
// components. Throws GenericityViolated when N0^T(Vw2 x V) degenerates.
ScalarForm dw2_form(const DistData& d);

// Independent route: solve m^T(omega x V + d(V+x0) + Vw1 dw1 + Vw2 dw2) = 0
// for the dw2 coefficients directly.
ScalarForm dw2_direct_solve(const DistData& d);

double dw2_oracle_residual(const DistData& d);

struct SplitCoefficients {
    ScalarForm A2; // scalar 2-form
    ScalarForm B2; // scalar 1-form
    Jet C2;
    cplx B1;
    ScalarForm A1;
};

// A2, B2, C2 per their defining displays. Throws CZero if dependent
// quantities are requested where C2 vanishes (handled by callers).
SplitCoefficients split_coefficients(const DistData& d);

// Residual 2-form of the omega-independent compatibility condition
//   -A2 + [P12 * Vxdx0 / D2^2] ^ (B2 / C2) = 0.
ScalarForm compatibility_form(const DistData& d);

double compatibility_residual(const DistData& d);

// Difference between the mechanical reduction of d~(dw2 relation) and
// the collapsed display -A2 - lever ^ dw1 + (B2 + C2 dw1) ^ womega/D2.
// Requires a flat omega (the collapse uses the structure equations).
double dw2_integrability_residual(const DistData& d);

// Closed-form B1 from the u-components; `use_v_components` evaluates the
// same ratio from the v-components instead.
cplx b1_closed_form(const DistData& d, bool use_v_components = false);

// 2-form of the wedge condition B2 ^ (-VxdVx0/m + P12*Vxdx0/(D2*C2)) = 0.
double b1_wedge_condition_residual(const DistData& d);

struct Dw1Forms {
    ScalarForm ansatz; // -B2/C2 + B1 [P12*Vxdx0/(D2*C2) + womega]
    ScalarForm split;  // (B1/m) [VxdVx0 + m*womega]
    ScalarForm A1;     // (B1/m) VxdVx0
};

Dw1Forms dw1_forms(const DistData& d, cplx b1);

// Splitting mechanism: dw1 (split form) wedge dw2 (with dw1 substituted),
// max coefficient magnitude.
double splitting_residual(const DistData& d, cplx b1);

struct ExchangeResiduals {
    double ratio_law;     // swapped compatibility vs original * D2/D1
    double b1_invariance; // B1' * D2 + D1 * B1 - m
};

ExchangeResiduals exchange_covariance(const TangencyDistribution& dist,
                                      const std::array<cplx, 4>& pt,
                                      const VectorForm* omega = nullptr);

// --- Pfaffian systems -------------------------------------------------

// Constraints dw_i = phi_i with phi_i spanned by du, dv; coefficients
// must be jets of order >= 1 in all four variables.
struct PfaffianSystem {
    std::function<std::array<ScalarForm, 2>(const std::array<cplx, 4>&)> phi;
};

// Frobenius residuals: reduce d(dw_i - phi_i) modulo the system; both
// vanish at all points iff the system is integrable.
std::array<double, 2> frobenius_residual(const PfaffianSystem& sys, const std::array<cplx, 4>& pt);

// The leaf system of a distribution: dw1 from the split form, dw2 from
// the constraint with dw1 substituted. omega_at supplies the connection
// form at (u, v) (null = rigid).
PfaffianSystem leaf_system(const TangencyDistribution& dist,
                           std::function<VectorForm(cplx, cplx)> omega_at = {});

struct LeafResult {
    cplx w1, w2;
    double holonomy; // |delta w| after a closed loop
    int steps;
};

// 4th-order adaptive integration of dw_i = phi_i along a polyline in
// (u, v). Throws StepUnderflow at stiff points.
LeafResult integrate_leaf(const PfaffianSystem& sys, const std::array<cplx, 4>& start,
                          const std::vector<std::array<cplx, 2>>& path,
                          double step_tolerance = 1e-10);

} // namespace rolldist
