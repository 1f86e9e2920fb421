#include "ratode/quadext.hpp"

#include "ratode/polyalg.hpp"

namespace ratode {

namespace {

const RatFn& pick_radicand(const RatFn& a, const RatFn& b) {
    if (a.is_zero()) return b;
    if (!b.is_zero() && !(a == b)) throw std::invalid_argument("mixing two different quadratic extensions");
    return a;
}

// Split a polynomial in delta into even and odd parts after delta^2 -> r.
std::pair<RatFn, RatFn> split_delta(const MPoly& p, const RatFn& r) {
    auto cs = p.coeffs(vars::delta());
    RatFn even, odd, rk(1);
    for (std::size_t i = 0; i < cs.size(); i += 2) {
        even += RatFn(cs[i]) * rk;
        if (i + 1 < cs.size()) odd += RatFn(cs[i + 1]) * rk;
        rk *= r;
    }
    return {even, odd};
}

} // namespace

QuadExtScalar::QuadExtScalar(RatFn re, RatFn im, RatFn radicand)
    : re_(std::move(re)), im_(std::move(im)), rad_(std::move(radicand)) {
    if (im_.is_zero()) return;
    if (rad_.depends_on(vars::delta())) throw std::invalid_argument("radicand may not contain delta");
    auto sn = sqrt_exact(rad_.num());
    auto sd = sqrt_exact(rad_.den());
    if (sn && sd) {
        re_ = re_ + im_ * RatFn::make(*sn, *sd);
        im_ = RatFn();
    }
}

QuadExtScalar operator+(const QuadExtScalar& a, const QuadExtScalar& b) {
    const RatFn& r = pick_radicand(a.im_.is_zero() ? RatFn() : a.rad_, b.im_.is_zero() ? RatFn() : b.rad_);
    return {a.re_ + b.re_, a.im_ + b.im_, r.is_zero() ? (a.rad_.is_zero() ? b.rad_ : a.rad_) : r};
}

QuadExtScalar operator*(const QuadExtScalar& a, const QuadExtScalar& b) {
    if (a.is_rational() && b.is_rational()) return QuadExtScalar::rational(a.re_ * b.re_);
    RatFn r = pick_radicand(a.im_.is_zero() ? RatFn() : a.rad_, b.im_.is_zero() ? RatFn() : b.rad_);
    return {a.re_ * b.re_ + a.im_ * b.im_ * r, a.re_ * b.im_ + a.im_ * b.re_, r};
}

QuadExtScalar operator/(const QuadExtScalar& a, const QuadExtScalar& b) {
    if (b.is_rational()) return {a.re_ / b.re_, a.im_ / b.re_, a.rad_};
    RatFn n = b.norm();
    QuadExtScalar num = a * b.conjugate();
    return {num.re_ / n, num.im_ / n, num.rad_};
}

RatFn QuadExtScalar::to_ratfn() const {
    if (im_.is_zero()) return re_;
    return re_ + im_ * RatFn::var(vars::delta());
}

QuadExtScalar QuadExtScalar::from_ratfn(const RatFn& r, const RatFn& radicand) {
    if (!r.depends_on(vars::delta())) return rational(r);
    auto [nre, nim] = split_delta(r.num(), radicand);
    auto [dre, dim] = split_delta(r.den(), radicand);
    QuadExtScalar num(nre, nim, radicand), den(dre, dim, radicand);
    if (den.is_zero()) throw NotDefined("denominator vanishes modulo the radicand");
    return num / den;
}

RatFn reduce_delta(const RatFn& r, const RatFn& radicand) {
    return QuadExtScalar::from_ratfn(r, radicand).to_ratfn();
}

} // namespace ratode
