#pragma once

#include "ratode/expr.hpp"

#include <string>
#include <vector>

namespace ratode {

struct VerifyReport {
    bool exact_zero = false;
    MPoly residual;  // reduced numerator of F(y, y')
    std::string notes;
};

// y' is d/dx when no rules are given, otherwise dy/dx = dy/dx|explicit +
// sum over rules of dy/df * q. Throws std::invalid_argument when y uses a
// variable that is neither in F nor x, c, delta or a rule name.
VerifyReport verify_solution(const MPoly& F, const RatFn& y, const std::vector<FunctionalRule>& rules = {},
                             const RatFn& radicand = RatFn());

// d/dx through the rules.
RatFn total_derivative(const RatFn& y, const std::vector<FunctionalRule>& rules);

struct OracleOptions {
    unsigned degree_bound = 6;
    unsigned trials = 10;
    unsigned seed = 1;
};

// Rational solutions found from truncated power series at sampled smooth
// points of the curve and their diagonal Pade approximants. F must be free of
// parameters. Throws std::runtime_error when no smooth initial point is found.
std::vector<RatFn> series_oracle(const MPoly& F, const OracleOptions& opt = {});

// Power series of a solution through (y0, z0) up to x^order. Requires
// dF/dy'(y0, z0) != 0.
std::vector<Rat> series_solution(const MPoly& F, const Rat& y0, const Rat& z0, unsigned order);

// [d/d] Pade approximant of the series, if the linear system has a solution.
std::optional<RatFn> pade(const std::vector<Rat>& series, unsigned d);

struct ResidualReport {
    double max_residual = 0;
    unsigned skipped = 0;
};

// Diagnostic only: |F(y(x), y'(x))| at the sample values of x (c set to 0).
ResidualReport numeric_residual(const MPoly& F, const RatFn& y, const std::vector<Rat>& xs);

} // namespace ratode
