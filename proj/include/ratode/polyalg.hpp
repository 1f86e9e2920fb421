#pragma once

#include "ratode/mpoly.hpp"

#include <optional>
#include <vector>

namespace ratode {

// Multivariate gcd over Q[all variables], normalized with normalize_unit.
// gcd(0, 0) is 0.
MPoly gcd(const MPoly& a, const MPoly& b);

// Primitive gcd of p and q with respect to v over the field of rational
// functions in the remaining variables (recursive subresultant PRS).
MPoly gcd_poly(const MPoly& p, const MPoly& q, Var v);

// Gcd of the coefficients of p viewed as a polynomial in v.
MPoly content(const MPoly& p, Var v);
MPoly primitive_part(const MPoly& p, Var v);

// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, in v.
MPoly prem(const MPoly& a, const MPoly& b, Var v);

// Sylvester resultant eliminating v. The sign is that of the determinant of
// the Sylvester matrix with the p-rows above the q-rows, i.e.
// Res(p, q) = lc(p)^deg(q) * prod q(roots of p).
// Throws std::invalid_argument when neither input depends on v.
MPoly resultant(const MPoly& p, const MPoly& q, Var v);

// j-th subresultant (determinant polynomial) of p and q in v.
MPoly subresultant(const MPoly& p, const MPoly& q, Var v, unsigned j);

struct SqfFactor {
    MPoly factor;
    unsigned multiplicity = 1;
};

// Yun's algorithm in v. Factors are primitive in v, squarefree, pairwise
// coprime, and prod factor^m equals p up to a factor free of v.
std::vector<SqfFactor> squarefree_decompose(const MPoly& p, Var v);
MPoly squarefree_part(const MPoly& p, Var v);

// Rational roots of a univariate polynomial in v with rational
// coefficients, sorted ascending, without multiplicity.
std::vector<Rat> rational_roots(const MPoly& p, Var v);

struct LinQuadSplit {
    std::vector<SqfFactor> linear;     // degree one in v
    std::vector<SqfFactor> quadratic;  // degree two in v, no root in the coefficient field
    MPoly residual{1};                 // unfactored remainder (1 when fully split)
};

// Extract factors of degree one and two in v. Linear factors over the
// coefficient field are found when they are squarefree components of degree
// one or rational roots of a purely numeric factor; quadratic factors only
// for numeric factors.
LinQuadSplit split_linear_quadratic(const MPoly& p, Var v);

// Exact square root if p is the square of a polynomial.
std::optional<MPoly> sqrt_exact(const MPoly& p);
std::optional<Rat> sqrt_exact(const Rat& r);

} // namespace ratode
