#include "rolldist/jet.hpp"

#include <algorithm>
#include <cmath>

namespace rolldist {

namespace jet_detail {

Tables::Tables() {
    pos.fill(-1);
    for (int deg = 0; deg <= Jet::kMaxOrder; ++deg) {
        for (int a = deg; a >= 0; --a)
            for (int b = deg - a; b >= 0; --b)
                for (int c = deg - a - b; c >= 0; --c) {
                    int d = deg - a - b - c;
                    MultiIndex mi{a, b, c, d};
                    pos[pack(mi)] = static_cast<int>(monos.size());
                    monos.push_back(mi);
                }
    }
}

const Tables& Tables::get() {
    static const Tables t;
    return t;
}

inline int degree(const MultiIndex& mi) { return mi[0] + mi[1] + mi[2] + mi[3]; }

inline double factorial_of(const MultiIndex& mi) {
    static const double fact[4] = {1.0, 1.0, 2.0, 6.0};
    return fact[mi[0]] * fact[mi[1]] * fact[mi[2]] * fact[mi[3]];
}

} // namespace jet_detail

using jet_detail::Tables;

int Jet::size_for(int order) {
    static const int sizes[4] = {1, 5, 15, 35};
    return sizes[order];
}

Jet Jet::variable(int index, cplx value, int order) {
    if (index < 0 || index >= kVars)
        fail(ErrorKind::OrderExceeded, "jet variable index out of range");
    Jet j(order);
    j.c_[0] = value;
    if (j.order_ >= 1) {
        MultiIndex mi{0, 0, 0, 0};
        mi[index] = 1;
        j.c_[Tables::get().pos[Tables::pack(mi)]] = cplx(1.0, 0.0);
    }
    return j;
}

cplx Jet::coeff(const MultiIndex& mi) const {
    if (jet_detail::degree(mi) > order_)
        fail(ErrorKind::OrderExceeded, "multi-index degree exceeds jet order");
    return c_[Tables::get().pos[Tables::pack(mi)]];
}

cplx Jet::partial(const MultiIndex& mi) const {
    return coeff(mi) * jet_detail::factorial_of(mi);
}

Jet Jet::derivative(int var) const {
    if (order_ == 0)
        fail(ErrorKind::OrderExhausted, "cannot differentiate an order-0 jet");
    const auto& t = Tables::get();
    Jet r(order_ - 1);
    for (int i = 0; i < size_for(r.order_); ++i) {
        MultiIndex mi = t.monos[i];
        mi[var] += 1;
        r.c_[i] = c_[t.pos[Tables::pack(mi)]] * double(mi[var]);
    }
    return r;
}

Jet Jet::truncated(int order) const {
    if (order >= order_) return *this;
    Jet r(order);
    std::copy(c_.begin(), c_.begin() + size_for(order), r.c_.begin());
    return r;
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& z : r.c_) z = -z;
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    if (o.order_ < order_) *this = truncated(o.order_);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    if (o.order_ < order_) *this = truncated(o.order_);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Jet operator*(const Jet& a, cplx s) {
    Jet r = a;
    for (auto& z : r.c_) z *= s;
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    const auto& t = Tables::get();
    int order = std::min(a.order_, b.order_);
    Jet r(order);
    int na = Jet::size_for(std::min(a.order_, order));
    for (int i = 0; i < na; ++i) {
        if (a.c_[i] == cplx{}) continue;
        const MultiIndex& mi = t.monos[i];
        int di = jet_detail::degree(mi);
        int nb = Jet::size_for(order - di);
        for (int j = 0; j < nb; ++j) {
            if (b.c_[j] == cplx{}) continue;
            const MultiIndex& mj = t.monos[j];
            MultiIndex mk{mi[0] + mj[0], mi[1] + mj[1], mi[2] + mj[2], mi[3] + mj[3]};
            r.c_[t.pos[Tables::pack(mk)]] += a.c_[i] * b.c_[j];
        }
    }
    return r;
}

Jet Jet::compose(const std::vector<cplx>& series, const Jet& a) {
    Jet h = a;
    h.c_[0] = cplx{};
    Jet r = Jet::constant(series.back(), a.order_);
    for (int k = static_cast<int>(series.size()) - 2; k >= 0; --k)
        r = r * h + series[k];
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    cplx b0 = b.value();
    if (std::abs(b0) <= 1e-12)
        fail(ErrorKind::DivisionBySingularJet, "division by jet with (near-)zero constant term");
    std::vector<cplx> s(b.order_ + 1);
    cplx p = 1.0 / b0;
    for (int k = 0; k <= b.order_; ++k) {
        s[k] = p;
        p *= -1.0 / b0;
    }
    return a * Jet::compose(s, b);
}

namespace {

std::vector<cplx> trig_series(cplx f0, cplx f1, int order, int period_sign) {
    // Series for functions with f'' = period_sign * f (trig: -1, hyperbolic: +1).
    std::vector<cplx> s(order + 1);
    double fact = 1.0;
    cplx d0 = f0, d1 = f1;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        s[k] = ((k % 2 == 0) ? d0 : d1) / fact;
        if (k % 2 == 1) {
            d0 *= double(period_sign);
            d1 *= double(period_sign);
        }
    }
    return s;
}

} // namespace

Jet sin(const Jet& a) {
    cplx z = a.value();
    return Jet::compose(trig_series(std::sin(z), std::cos(z), a.order(), -1), a);
}

Jet cos(const Jet& a) {
    cplx z = a.value();
    return Jet::compose(trig_series(std::cos(z), -std::sin(z), a.order(), -1), a);
}

Jet sinh(const Jet& a) {
    cplx z = a.value();
    return Jet::compose(trig_series(std::sinh(z), std::cosh(z), a.order(), +1), a);
}

Jet cosh(const Jet& a) {
    cplx z = a.value();
    return Jet::compose(trig_series(std::cosh(z), std::sinh(z), a.order(), +1), a);
}

Jet exp(const Jet& a) {
    cplx e = std::exp(a.value());
    std::vector<cplx> s(a.order() + 1);
    double fact = 1.0;
    for (int k = 0; k <= a.order(); ++k) {
        if (k > 0) fact *= k;
        s[k] = e / fact;
    }
    return Jet::compose(s, a);
}

Jet sqrt(const Jet& a) {
    cplx z = a.value();
    if (std::abs(z) <= 1e-12)
        fail(ErrorKind::SqrtNearZero, "sqrt of jet with constant term near the branch point");
    // Principal branch throughout.
    cplx r = std::sqrt(z);
    std::vector<cplx> s(a.order() + 1);
    // d^k sqrt(z) / k! = binom(1/2, k) z^{1/2 - k}
    cplx binom = 1.0;
    cplx power = r;
    for (int k = 0; k <= a.order(); ++k) {
        s[k] = binom * power;
        binom *= (0.5 - double(k)) / double(k + 1);
        power /= z;
    }
    return Jet::compose(s, a);
}

} // namespace rolldist
