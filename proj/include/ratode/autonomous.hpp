#pragma once

#include "ratode/expr.hpp"
#include "ratode/paramspace.hpp"

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ratode {

enum class FGCase { Direct, Moebius, ConstantOnly, None };

std::string_view fg_case_name(FGCase c);

// P2/P1' = A/B classified as alpha, alpha*(t - beta)^2, 0 or neither.
struct FGClassification {
    FGCase kind = FGCase::None;
    RatFn alpha, beta;
    MPoly A, B;
};

// Throws std::invalid_argument when P1 is constant.
FGClassification feng_gao_check(const Parametrization& P);

struct SolutionFamily {
    Parametrization P;
    FGCase kind = FGCase::None;
    RatFn alpha, beta;
    RatFn value;        // Constant families
    RatFn closed_form;  // in x, c and the parameters (and delta)
    ConstructibleSet guard;
    bool certified = false;

    bool uses_delta() const { return P.uses_delta(); }
};

// Builds P1(alpha*(x+c)), P1(beta - 1/(alpha*(x+c))) or a constant P1(t0),
// and certifies it by substitution into F. Throws std::logic_error when the
// certification fails.
SolutionFamily solution_from_fg(const MPoly& F, const Parametrization& P, const FGClassification& cls);

// Omega_FG: Res_t(A, B), lc(A), lc(B) and squarefreeness of A and B.
ConstructibleSet omega_fg(const Parametrization& P, const FGClassification& cls);

// Exact check that y(x) solves F(y, y') = 0 (reduced modulo delta^2 - radicand).
bool certify_solution(const MPoly& F, const RatFn& y, const RatFn& radicand = RatFn());

// A shift k (possibly depending on the parameters) with f(x + k) = g(x),
// where both are taken at c = 0.
std::optional<RatFn> shift_between(const RatFn& f, const RatFn& g);

// Render a closed form as a function of (x + c) when it only depends on x + c.
std::string render_solution(const RatFn& y);

// closed form at the point with c kept symbolic; nullopt when undefined.
std::optional<RatFn> specialize_solution(const SolutionFamily& fam, const std::map<Var, Rat>& point);

enum class ComponentStatus { Solved, NoSolution, ConstantOnly, Reducible, Undecided, Parametrized };

std::string_view status_name(ComponentStatus s);

struct ComponentReport {
    Component component;
    ComponentStatus status = ComponentStatus::Undecided;
    std::optional<Parametrization> parametrization;
    std::optional<FGClassification> fg;
    std::string source;  // "special" or "user:<line>"
    std::optional<CoveringData> covering;
    std::optional<SolutionFamily> family;
    std::map<Var, MPoly> substitution;  // parameters eliminated on this component
    std::string reason;
};

struct SolveOptions {
    bool use_special = true;
    bool surjective = false;  // attach a surjective covering (decomposition only)
    unsigned seed = 1;
};

// PS1* is where F degenerates to a constant; PS2* collects components without
// nonconstant solutions or with a reducible curve; PS3* the solved ones.
struct RationalSolutionDecomposition {
    ConstructibleSet ps1;
    std::vector<ComponentReport> ps2;
    std::vector<ComponentReport> ps3;        // Solved
    std::vector<ComponentReport> undecided;  // reported with the ps3 entries
    Irreducibility irreducibility = Irreducibility::Assumed;

    ConstructibleSet ps2_set() const;
    ConstructibleSet ps3_set() const;
};

RationalSolutionDecomposition constant_parameter_solve(const ProblemSpec& spec, const SolveOptions& opt = {});

// Decomposition with respect to parametrizations only (no FG refinement).
struct ParametrizationDecomposition {
    ConstructibleSet ps1;
    std::vector<ComponentReport> ps2;  // reducible
    std::vector<ComponentReport> ps3;  // with a parametrization
    std::vector<ComponentReport> undecided;
};

ParametrizationDecomposition decompose_parametrizations(const ProblemSpec& spec, const SolveOptions& opt = {});

nlohmann::json to_json(const ComponentReport& r);
nlohmann::json to_json(const RationalSolutionDecomposition& d);
nlohmann::json to_json(const ParametrizationDecomposition& d);

} // namespace ratode
