#pragma once

#include <array>
#include <complex>
#include <vector>

#include "rolldist/errors.hpp"

namespace rolldist {

using cplx = std::complex<double>;

using MultiIndex = std::array<int, 4>;

// Truncated Taylor expansion in the four coordinates (u, v, w1, w2),
// total degree <= order <= 3. Coefficient of a multi-index a stores
// d^a f / a! (Taylor convention). Variables not used by an expression
// simply carry zero coefficients, so the same carrier serves both
// surface fields (u,v only) and distribution fields.
class Jet {
public:
    static constexpr int kVars = 4;
    static constexpr int kMaxOrder = 3;

    explicit Jet(int order = kMaxOrder) : order_(clamp_order(order)), c_(size_for(order_), cplx{}) {}

    static Jet constant(cplx value, int order = kMaxOrder) {
        Jet j(order);
        j.c_[0] = value;
        return j;
    }

    // The coordinate function x_index expanded at base value `value`.
    static Jet variable(int index, cplx value, int order = kMaxOrder);

    int order() const { return order_; }

    // Constant (base-point) term.
    cplx value() const { return c_[0]; }

    // Taylor coefficient d^a f / a!.
    cplx coeff(const MultiIndex& mi) const;

    // True partial derivative a! * coeff(a). Throws OrderExceeded past the
    // carried order.
    cplx partial(const MultiIndex& mi) const;

    // d/dx_var as a jet of order-1. Throws OrderExhausted at order 0.
    Jet derivative(int var) const;

    // Drop to a lower order (no-op when already at or below it).
    Jet truncated(int order) const;

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);

    friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
    friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);

    friend Jet operator+(const Jet& a, cplx s) { Jet r = a; r.c_[0] += s; return r; }
    friend Jet operator+(cplx s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, cplx s) { return a + (-s); }
    friend Jet operator-(cplx s, const Jet& a) { return -a + s; }
    friend Jet operator*(const Jet& a, cplx s);
    friend Jet operator*(cplx s, const Jet& a) { return a * s; }
    friend Jet operator*(const Jet& a, double s) { return a * cplx(s, 0.0); }
    friend Jet operator*(double s, const Jet& a) { return a * cplx(s, 0.0); }
    friend Jet operator/(const Jet& a, cplx s) { return a * (cplx(1.0, 0.0) / s); }

    friend Jet sin(const Jet& a);
    friend Jet cos(const Jet& a);
    friend Jet sinh(const Jet& a);
    friend Jet cosh(const Jet& a);
    friend Jet exp(const Jet& a);
    friend Jet sqrt(const Jet& a);

    // Composes the univariate series sum_k series[k] * h^k where h is
    // `a` with its constant term removed; the backbone of the analytic
    // functions above.
    static Jet compose(const std::vector<cplx>& series, const Jet& a);

    static int size_for(int order);

private:
    static int clamp_order(int order) {
        if (order < 0 || order > kMaxOrder)
            fail(ErrorKind::OrderExceeded, "jet order out of range");
        return order;
    }

    int order_;
    std::vector<cplx> c_; // indexed by the shared monomial table
};

// Magnitude hooks used by the templated linear algebra: modulus of the
// scalar for complex numbers, modulus of the constant term for jets.
inline double magnitude(cplx z) { return std::abs(z); }
inline double magnitude(const Jet& j) { return std::abs(j.value()); }

inline cplx leading_value(cplx z) { return z; }
inline cplx leading_value(const Jet& j) { return j.value(); }

namespace jet_detail {

// Monomial table shared by all jets: multi-indices of total degree <= 3
// over 4 variables, sorted by degree then lexicographically. 35 entries.
struct Tables {
    std::vector<MultiIndex> monos;
    std::array<int, 256> pos; // packed multi-index -> slot, or -1
    Tables();
    static const Tables& get();
    static int pack(const MultiIndex& mi) {
        return mi[0] | (mi[1] << 2) | (mi[2] << 4) | (mi[3] << 6);
    }
};

} // namespace jet_detail

} // namespace rolldist
