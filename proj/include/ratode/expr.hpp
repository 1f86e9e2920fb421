#pragma once

#include "ratode/ratfn.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ratode {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int column);
    int line;
    int column;
};

struct FunctionalRule {
    Var name;
    RatFn q;  // f' = q(f)
};

struct UserParametrization {
    RatFn p1, p2;
    int line = 0;
};

struct ProblemSpec {
    MPoly F;  // in y, z (= y'), constant parameters and functional names
    std::vector<Var> constant_params;
    std::vector<FunctionalRule> functional_params;
    std::vector<UserParametrization> user_parametrizations;
    std::string query;                           // command tag, may be empty
    std::map<std::string, std::string> meanings;  // "f" -> "exp(x)"
    VarRegistry registry;

    bool has_functional() const { return !functional_params.empty(); }
};

// Resolves an identifier (with `primed` true for name') to a value; returns
// nullopt for unknown names.
using NameResolver = std::function<std::optional<RatFn>(const std::string& name, bool primed)>;

RatFn parse_expr(std::string_view text, const NameResolver& resolve, int line = 1, int column_offset = 0);

// Parse with every non-reserved identifier accepted as a variable and y'
// read as z. Intended for tests and internal strings.
RatFn parse_ratfn(std::string_view text);

ProblemSpec parse_problem(const std::string& text);

// Parse the `param:` lines of a separate file against an existing problem.
std::vector<UserParametrization> parse_param_file(const std::string& text, const ProblemSpec& spec);

// Canonical text. Terms in decreasing monomial order, `*` always explicit,
// rational coefficients written as trailing divisions (x^2/2).
std::string render(const MPoly& p);
std::string render(const RatFn& r);
std::string render_pair(const RatFn& a, const RatFn& b);
// Render with z shown as y'.
std::string render_ode(const MPoly& F);

} // namespace ratode
