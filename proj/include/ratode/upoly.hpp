#pragma once

#include "ratode/ratfn.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ratode {

// Dense polynomial in one variable with coefficients in the field of
// rational functions of the remaining variables. c[i] multiplies v^i.
class UPoly {
public:
    UPoly() = default;
    UPoly(Var v, std::vector<RatFn> c);
    static UPoly constant(Var v, const RatFn& r) { return UPoly(v, {r}); }
    // r must be polynomial in v (its denominator free of v).
    static UPoly from(const RatFn& r, Var v);
    static UPoly from(const MPoly& p, Var v) { return from(RatFn(p), v); }

    Var var() const { return v_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const RatFn& coeff(int i) const;
    const RatFn& lc() const { return c_.back(); }
    const std::vector<RatFn>& coeffs() const { return c_; }

    RatFn to_ratfn() const;
    RatFn evaluate(const RatFn& at) const;
    UPoly derive() const;
    UPoly monic() const;

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const RatFn& s, const UPoly& a);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    // Quotient and remainder; throws std::domain_error on division by zero.
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
    static UPoly gcd(const UPoly& a, const UPoly& b);  // monic, gcd(0,0) = 0
    // (s, t) with s*a + t*b = c and deg s < deg b; requires gcd(a, b) | c.
    static std::pair<UPoly, UPoly> ext_euclid(const UPoly& a, const UPoly& b, const UPoly& c);

private:
    Var v_;
    std::vector<RatFn> c_;
    void trim();
};

struct LinearSolution {
    std::vector<RatFn> particular;               // free unknowns set to zero
    std::vector<std::vector<RatFn>> nullspace;  // basis of the homogeneous solutions
};

// Solve A u = b exactly over the rational function field. nullopt when
// inconsistent.
std::optional<LinearSolution> solve_linear(std::vector<std::vector<RatFn>> A, std::vector<RatFn> b);

} // namespace ratode
