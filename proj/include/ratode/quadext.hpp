#pragma once

#include "ratode/ratfn.hpp"

namespace ratode {

// re + im*delta with delta^2 = radicand. The radicand is never a perfect
// square of the base field; if it is, im is folded into re on construction.
class QuadExtScalar {
public:
    QuadExtScalar() = default;
    QuadExtScalar(RatFn re, RatFn im, RatFn radicand);
    static QuadExtScalar rational(RatFn re) { return QuadExtScalar(std::move(re), RatFn(), RatFn()); }

    const RatFn& re() const { return re_; }
    const RatFn& im() const { return im_; }
    const RatFn& radicand() const { return rad_; }
    bool is_rational() const { return im_.is_zero(); }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    QuadExtScalar operator-() const { return {-re_, -im_, rad_}; }
    friend QuadExtScalar operator+(const QuadExtScalar& a, const QuadExtScalar& b);
    friend QuadExtScalar operator-(const QuadExtScalar& a, const QuadExtScalar& b) { return a + (-b); }
    friend QuadExtScalar operator*(const QuadExtScalar& a, const QuadExtScalar& b);
    friend QuadExtScalar operator/(const QuadExtScalar& a, const QuadExtScalar& b);
    QuadExtScalar conjugate() const { return {re_, -im_, rad_}; }
    // re^2 - im^2 * radicand
    RatFn norm() const { return re_ * re_ - im_ * im_ * rad_; }
    friend bool operator==(const QuadExtScalar& a, const QuadExtScalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_ && (a.im_.is_zero() || a.rad_ == b.rad_);
    }

    // The value as a rational function in the variable delta.
    RatFn to_ratfn() const;
    // Read a rational function in delta modulo delta^2 - radicand.
    static QuadExtScalar from_ratfn(const RatFn& r, const RatFn& radicand);

private:
    RatFn re_, im_, rad_;
};

// Canonical representative of r modulo delta^2 - radicand: the denominator is
// free of delta and the numerator has degree at most one in delta.
RatFn reduce_delta(const RatFn& r, const RatFn& radicand);

} // namespace ratode
