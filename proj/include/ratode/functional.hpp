#pragma once

#include "ratode/curve.hpp"
#include "ratode/expr.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratode {

struct UnsupportedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Symbol standing for dw/df_i. One coefficient uses vars::wp().
Var derivative_symbol(const std::vector<FunctionalRule>& rules, std::size_t i);

struct AssocODE {
    MPoly G;  // in the f-names, w, derivative symbols and constants
    std::vector<FunctionalRule> rules;
    bool single_coefficient = true;
};

// G = sum_i (dP1/df_i + dP1/dt * W_i) q_i - P2 with t -> w, as a numerator.
AssocODE associated_ode(const Parametrization& P, const std::vector<FunctionalRule>& rules);

struct CharacteristicSystem {
    std::vector<std::pair<Var, RatFn>> equations;  // d(var)/ds = rhs; w last
};

CharacteristicSystem characteristic_system(const Parametrization& P, const std::vector<FunctionalRule>& rules);

struct RiccatiForm {
    Var f;
    RatFn g0, g1, g2;  // dw/df = g0 + g1 w + g2 w^2
    MPoly removed;      // factor free of w' divided out of G first (1 if none)

    bool is_linear() const { return g2.is_zero(); }
};

// nullopt when G = 0 does not give w' as a polynomial of degree <= 2 in w.
// Throws std::invalid_argument if G does not involve w'.
std::optional<RiccatiForm> riccati_form(const AssocODE& G);

struct LinearGeneral {
    RatFn H, vp;  // w = c*H + vp
};

struct LinearOutcome {
    std::optional<LinearGeneral> solution;
    std::string reason;  // set when solution is empty
};

// Rational general solution of dw/df = g0 + g1 w. H from the residues of g1,
// vp = H * integral(g0 / H) by Hermite reduction.
LinearOutcome linear_general_rational(const RatFn& g0, const RatFn& g1, Var f);

struct KovacicOptions {
    unsigned degree_cap = 50;
    unsigned max_solutions = 2;
};

// Rational solutions of the Riccati equation (g2 != 0) by the first case of
// Kovacic's algorithm. Throws UnsupportedInput when a pole is not rational.
std::vector<RatFn> riccati_particular_rational(const RiccatiForm& R, const KovacicOptions& opt = {});

struct RiccatiGeneral {
    std::optional<RatFn> w;      // in f and c
    std::optional<RatFn> w1;     // particular used for the reduction
    std::optional<LinearGeneral> linear;
    std::vector<RatFn> particular;
    std::string reason;
};

RiccatiGeneral riccati_general_rational(const RiccatiForm& R, const KovacicOptions& opt = {});

struct ConstantW {
    RatFn value;     // may contain delta
    RatFn radicand;  // zero unless value uses delta
};

// Values w = k free of f with G(f, k, 0) = 0 identically.
std::vector<ConstantW> constant_w_solutions(const AssocODE& G);

struct ParticularSolution {
    RatFn w, y;
    std::string origin;  // "constant_w" or "riccati"
    bool certified = false;
};

enum class FunctionalStatus { Srgs, NoSrgs, Unsupported, Undecided };
std::string_view functional_status_name(FunctionalStatus s);

struct FunctionalOptions {
    KovacicOptions kovacic;
    unsigned ansatz_degree = 3;
};

struct FunctionalResult {
    FunctionalStatus status = FunctionalStatus::Undecided;
    std::optional<Parametrization> parametrization;
    std::string parametrization_source;
    std::optional<AssocODE> assoc;
    std::optional<RiccatiForm> riccati;
    std::optional<RatFn> w, y;
    bool certified = false;
    std::optional<RatFn> w1;
    std::optional<LinearGeneral> linear;
    std::vector<ParticularSolution> particular;
    std::vector<MPoly> nonzero;  // constant-parameter factors assumed nonzero
    std::string reason;
    std::map<std::string, std::string> meanings;
};

// One functional coefficient: parametrize, build the associated equation,
// solve it when it is linear or Riccati. Several coefficients: polynomial
// ansatz in the f-names when the associated equation is linear.
FunctionalResult functional_coefficient_solve(const ProblemSpec& spec, const FunctionalOptions& opt = {});

// Heuristic for several coefficients; w polynomial in the f-names of total
// degree <= degree.
FunctionalResult functional_ansatz_solve(const ProblemSpec& spec, const Parametrization& P, unsigned degree);

// Res_{name}(F, relation), for a functional name tied to the others by an
// algebraic relation. Candidates found from the result must be re-verified.
MPoly eliminate_functional(const MPoly& F, const MPoly& relation, Var name);

// Text with each f replaced by its declared meaning.
std::string render_with_meanings(const RatFn& r, const std::map<std::string, std::string>& meanings);

nlohmann::json to_json(const FunctionalResult& r);
nlohmann::json to_json(const CharacteristicSystem& s);

} // namespace ratode
