#pragma once

#include "ratode/quadext.hpp"

#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace ratode {

// (P1(t), P2(t)), both reduced. When radicand is nonzero the coefficients
// may contain the variable delta with delta^2 = radicand.
struct Parametrization {
    RatFn p1, p2;
    RatFn radicand;

    bool uses_delta() const { return !radicand.is_zero(); }
};

enum class Irreducibility { Assumed, CheckedProbabilistic, Failed };

struct PlaneCurve {
    MPoly F;  // in y and z
    unsigned degree_y = 0, degree_z = 0;
    Irreducibility status = Irreducibility::Assumed;

    static PlaneCurve of(const MPoly& F);
};

// Reduce modulo delta^2 - radicand when the parametrization uses delta.
RatFn reduce_for(const Parametrization& P, const RatFn& r);

// F(P1(t), P2(t)) as a reduced rational function.
RatFn evaluate_on(const MPoly& F, const Parametrization& P);

bool verify_parametrization(const MPoly& F, const Parametrization& P);

// max(deg num, deg den) in t.
unsigned rational_degree(const RatFn& r, Var v);

// Degree in s of gcd(num(P1(t) - P1(s)), num(P2(t) - P2(s))) over K(a)(t).
unsigned tracing_index(const Parametrization& P);

struct ImproperParametrization : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// t = I(y, z) with I(P1(t), P2(t)) = t. Throws ImproperParametrization.
RatFn invert_parametrization(const Parametrization& P);

// The Moebius map m with Q = P(m(t)) when Q is a reparametrization of P.
std::optional<RatFn> reparametrization_map(const Parametrization& P, const Parametrization& Q);

struct CurvePoint {
    RatFn y, z;
};

std::optional<CurvePoint> critical_point(const Parametrization& P);

struct CoveringData {
    std::vector<Parametrization> parts;
    std::vector<std::optional<CurvePoint>> critical;
    // For part i with a critical point: the part attaining it and the preimage.
    std::vector<int> attained_by;
    std::vector<Rat> witness;
    Rat shift = 0;
    Rat mu = 0;
};

CoveringData surjective_covering(const Parametrization& P);

struct Unsupported {
    std::string reason;
};

struct ReducibleCurve : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Restricted parametrizer: degree one in y or y', conics, and curves with a
// point of multiplicity d-1. Throws ReducibleCurve when reducibility shows up.
std::variant<Parametrization, Unsupported> parametrize_special(const MPoly& F);

// Structural reducibility evidence. Returns a reason or nullopt.
std::optional<std::string> reducibility_evidence(const MPoly& F);

// Degree check for a proper parametrization of an irreducible curve:
// deg P1 = deg_z F and deg P2 = deg_y F.
bool degrees_consistent(const MPoly& F, const Parametrization& P);

// Random specializations of the parameters; Failed when a specialization
// exposes a factor. Never a proof of irreducibility.
Irreducibility check_irreducible(const MPoly& F, const std::vector<Var>& params, std::mt19937& rng, int rounds = 3);

} // namespace ratode
