#include "ratode/ratfn.hpp"

#include "ratode/polyalg.hpp"

#include <algorithm>

namespace ratode {

namespace {

MPoly exact(const MPoly& a, const MPoly& b) {
    auto q = a.divide_exact(b);
    if (!q) throw std::logic_error("inexact division in rational function kernel");
    return *q;
}

} // namespace

RatFn RatFn::make(const MPoly& num, const MPoly& den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    RatFn r;
    if (num.is_zero()) return r;
    MPoly n = num, d = den;
    if (!d.is_constant()) {
        MPoly g = gcd(n, d);
        if (!g.is_constant()) {
            n = exact(n, g);
            d = exact(d, g);
        }
    }
    Rat c = d.rational_content();
    r.num_ = n * (Rat(1) / c);
    r.den_ = d * (Rat(1) / c);
    return r;
}

std::vector<Var> RatFn::variables() const {
    auto a = num_.variables(), b = den_.variables();
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

RatFn RatFn::operator-() const {
    RatFn r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFn operator+(const RatFn& a, const RatFn& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFn::make(a.num_ + b.num_, a.den_);
    if (a.is_polynomial() && b.is_polynomial()) return RatFn(a.num_ * (Rat(1) / a.den_.constant_value()) + b.num_ * (Rat(1) / b.den_.constant_value()));
    MPoly g = gcd(a.den_, b.den_);
    MPoly da = exact(a.den_, g), db = exact(b.den_, g);
    return RatFn::make(a.num_ * db + b.num_ * da, da * b.den_);
}

RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }

RatFn operator*(const RatFn& a, const RatFn& b) {
    if (a.is_zero() || b.is_zero()) return RatFn();
    if (a.is_polynomial() && b.is_polynomial()) return RatFn::make(a.num_ * b.num_, a.den_ * b.den_);
    MPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    return RatFn::make(exact(a.num_, g1) * exact(b.num_, g2), exact(a.den_, g2) * exact(b.den_, g1));
}

RatFn operator/(const RatFn& a, const RatFn& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    RatFn inv;
    inv.num_ = b.den_;
    inv.den_ = b.num_;
    Rat c = inv.den_.rational_content();
    inv.num_ *= Rat(1) / c;
    inv.den_ *= Rat(1) / c;
    return a * inv;
}

RatFn RatFn::pow(int e) const {
    if (e < 0) return RatFn(1) / pow(-e);
    RatFn r;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    r.den_ = den_.pow(static_cast<unsigned>(e));
    return r;
}

RatFn RatFn::derive(Var v) const {
    if (!depends_on(v)) return RatFn();
    if (is_polynomial()) return RatFn::make(num_.derive(v), den_);
    return RatFn::make(num_.derive(v) * den_ - num_ * den_.derive(v), den_ * den_);
}

Fraction substitute_fraction(const MPoly& p, const std::map<Var, RatFn>& s) {
    // Multiply through by prod q_v^deg_v(p) so every term stays polynomial.
    std::map<Var, unsigned> degs;
    MPoly den(1);
    for (auto& [v, r] : s) {
        unsigned d = p.degree(v);
        if (d == 0) continue;
        degs[v] = d;
        if (!r.is_polynomial()) den *= r.den().pow(d);
    }
    if (degs.empty()) return {p, den};
    std::map<std::pair<std::uint32_t, unsigned>, MPoly> cache;
    auto power = [&](Var v, bool numerator, unsigned e) -> const MPoly& {
        auto key = std::make_pair(v.id() * 2 + (numerator ? 1u : 0u), e);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const RatFn& r = s.at(v);
        return cache.emplace(key, (numerator ? r.num() : r.den()).pow(e)).first->second;
    };
    MPoly out;
    for (auto& term : p.terms()) {
        Monomial rest;
        MPoly factor(term.c);
        for (auto& [id, e] : term.m.entries()) {
            Var v = Var::from_id(id);
            if (!degs.count(v)) rest = rest * Monomial::of(v, e);
        }
        for (auto& [v, d] : degs) {
            unsigned e = term.m.degree(v);
            if (e) factor = factor * power(v, true, e);
            if (d - e && !s.at(v).is_polynomial()) factor = factor * power(v, false, d - e);
        }
        out += MPoly::monomial(rest, Rat(1)) * factor;
    }
    return {out, den};
}

RatFn RatFn::substitute(const std::map<Var, RatFn>& s) const {
    Fraction n = substitute_fraction(num_, s);
    Fraction d = substitute_fraction(den_, s);
    if (d.num.is_zero()) throw NotDefined("denominator vanishes under substitution");
    return RatFn::make(n.num * d.den, n.den * d.num);
}

std::optional<RatFn> specialize(const RatFn& r, const std::map<Var, Rat>& values) {
    MPoly d = r.den().evaluate(values);
    if (d.is_zero()) return std::nullopt;
    return RatFn::make(r.num().evaluate(values), d);
}

std::optional<RatFn> specialize(const RatFn& r, const std::map<Var, RatFn>& values) {
    try {
        return r.substitute(values);
    } catch (const NotDefined&) {
        return std::nullopt;
    }
}

} // namespace ratode
