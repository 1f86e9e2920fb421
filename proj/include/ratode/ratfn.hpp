#pragma once

#include "ratode/mpoly.hpp"

#include <map>
#include <optional>
#include <stdexcept>

namespace ratode {

// Raised when a substitution makes a denominator vanish identically.
struct NotDefined : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reduced quotient num/den. Canonical form: gcd(num, den) = 1, den has
// integer coefficients with content one and positive leading coefficient,
// zero is 0/1. Structural equality is therefore value equality.
class RatFn {
public:
    RatFn() : den_(1) {}
    RatFn(const MPoly& p) : num_(p), den_(1) {}
    RatFn(const Rat& c) : num_(c), den_(1) {}
    RatFn(long c) : num_(c), den_(1) {}
    static RatFn var(Var v) { return RatFn(MPoly::var(v)); }
    // Throws std::domain_error when den is zero.
    static RatFn make(const MPoly& num, const MPoly& den);

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    Rat constant_value() const { return num_.constant_value(); }
    bool depends_on(Var v) const { return num_.depends_on(v) || den_.depends_on(v); }
    std::vector<Var> variables() const;

    RatFn operator-() const;
    friend RatFn operator+(const RatFn& a, const RatFn& b);
    friend RatFn operator-(const RatFn& a, const RatFn& b);
    friend RatFn operator*(const RatFn& a, const RatFn& b);
    friend RatFn operator/(const RatFn& a, const RatFn& b);  // throws std::domain_error on zero
    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
    RatFn& operator/=(const RatFn& o) { return *this = *this / o; }
    friend bool operator==(const RatFn& a, const RatFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFn pow(int e) const;
    RatFn derive(Var v) const;

    // Simultaneous substitution; throws NotDefined on a vanishing denominator.
    RatFn substitute(const std::map<Var, RatFn>& s) const;
    RatFn substitute(Var v, const RatFn& r) const { return substitute(std::map<Var, RatFn>{{v, r}}); }

private:
    MPoly num_, den_;
};

// Substitute numeric values and reduce. nullopt when the reduced
// denominator vanishes under the assignment.
std::optional<RatFn> specialize(const RatFn& r, const std::map<Var, Rat>& values);
std::optional<RatFn> specialize(const RatFn& r, const std::map<Var, RatFn>& values);

// Substitute into a polynomial and return the result over a common
// denominator without reducing.
struct Fraction {
    MPoly num, den;
};
Fraction substitute_fraction(const MPoly& p, const std::map<Var, RatFn>& s);

} // namespace ratode
