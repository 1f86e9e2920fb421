#pragma once

#include "ratode/rat.hpp"
#include "ratode/var.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ratode {

// Power product over interned variables. Exponent pairs are sorted by
// variable id and never hold a zero exponent.
class Monomial {
public:
    using Entry = std::pair<std::uint32_t, std::uint32_t>;

    Monomial() = default;
    static Monomial of(Var v, std::uint32_t e = 1);

    unsigned degree() const { return deg_; }
    unsigned degree(Var v) const;
    bool is_one() const { return e_.empty(); }
    const std::vector<Entry>& entries() const { return e_; }

    Monomial operator*(const Monomial& o) const;
    std::optional<Monomial> divide(const Monomial& o) const;
    Monomial without(Var v) const;
    // Componentwise minimum.
    Monomial gcd(const Monomial& o) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }

private:
    std::vector<Entry> e_;
    unsigned deg_ = 0;
};

// Graded reverse lexicographic comparison; returns <0, 0, >0.
int grevlex_compare(const Monomial& a, const Monomial& b);

struct GrevlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b) < 0; }
};

// Sparse multivariate polynomial over Q. Terms are kept sorted in
// decreasing grevlex order with nonzero coefficients, so structural
// equality is polynomial equality.
class MPoly {
public:
    struct Term {
        Monomial m;
        Rat c;
    };

    MPoly() = default;
    MPoly(const Rat& c);
    MPoly(long c) : MPoly(Rat(c)) {}
    static MPoly var(Var v, std::uint32_t e = 1);
    static MPoly monomial(const Monomial& m, const Rat& c);
    static MPoly from_terms(std::vector<Term> terms);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
    Rat constant_value() const;  // requires is_constant()
    Rat constant_term() const;
    std::size_t size() const { return t_.size(); }
    const std::vector<Term>& terms() const { return t_; }

    const Monomial& leading_monomial() const { return t_.front().m; }
    const Rat& leading_coeff() const { return t_.front().c; }

    unsigned total_degree() const;
    unsigned degree(Var v) const;
    unsigned low_degree(Var v) const;
    bool depends_on(Var v) const { return degree(v) > 0; }
    std::vector<Var> variables() const;

    // Coefficients with respect to v, index = power of v.
    std::vector<MPoly> coeffs(Var v) const;
    static MPoly from_coeffs(const std::vector<MPoly>& cs, Var v);
    MPoly coeff(Var v, unsigned e) const;
    MPoly lc(Var v) const { return coeff(v, degree(v)); }

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o);
    MPoly& operator*=(const Rat& c);

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(MPoly a, const Rat& c) { return a *= c; }
    friend MPoly operator*(const Rat& c, MPoly a) { return a *= c; }
    friend MPoly operator*(long c, MPoly a) { return a *= Rat(c); }
    friend MPoly operator*(MPoly a, long c) { return a *= Rat(c); }
    friend MPoly operator+(MPoly a, long c) { return a += MPoly(c); }
    friend MPoly operator-(MPoly a, long c) { return a -= MPoly(c); }
    friend MPoly operator+(long c, const MPoly& a) { return MPoly(c) + a; }
    friend MPoly operator-(long c, const MPoly& a) { return MPoly(c) - a; }
    friend bool operator==(const MPoly& a, const MPoly& b);

    MPoly pow(unsigned e) const;
    MPoly derive(Var v) const;

    // Replace v by q.
    MPoly substitute(Var v, const MPoly& q) const;
    MPoly substitute(const std::map<Var, MPoly>& s) const;
    MPoly evaluate(Var v, const Rat& value) const;
    MPoly evaluate(const std::map<Var, Rat>& values) const;

    // Exact quotient, nullopt when b does not divide *this.
    std::optional<MPoly> divide_exact(const MPoly& b) const;

    // Gcd of the numerators over lcm of the denominators of the coefficients,
    // signed so that content * primitive == *this with positive leading coeff.
    Rat rational_content() const;
    // Integer coefficients, content one, positive leading coefficient.
    MPoly primitive_normalized() const;

    bool is_monomial() const { return t_.size() == 1; }

private:
    std::vector<Term> t_;
    void normalize_order();
};

// Apply the canonical unit normalization used for gcds and denominators.
inline MPoly normalize_unit(const MPoly& p) { return p.primitive_normalized(); }

} // namespace ratode
