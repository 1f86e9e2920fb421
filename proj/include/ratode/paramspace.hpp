#pragma once

#include "ratode/curve.hpp"

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace ratode {

// { a : eq(a) = 0 for all eq, neq(a) != 0 for all neq }
struct Component {
    std::vector<MPoly> eq, neq;
    bool coarse = false;

    friend bool operator==(const Component& a, const Component& b) {
        return a.eq == b.eq && a.neq == b.neq && a.coarse == b.coarse;
    }
};

// Finite union of components. No components is the empty set; a single
// component with no conditions is the whole space.
struct ConstructibleSet {
    std::vector<Component> components;

    static ConstructibleSet whole() { return {{Component{}}}; }
    static ConstructibleSet empty() { return {}; }
    static ConstructibleSet open(const std::vector<MPoly>& neqs);

    bool is_whole() const;
    bool is_empty() const { return components.empty(); }
    // Conditions collected from a single component (throws otherwise).
    const Component& single() const;
};

// Distinct squarefree primitive factors found by content and squarefree
// splitting in every variable. Constants are dropped.
std::vector<MPoly> split_factors(const MPoly& p);

// Normalize: split inequations into factors, sort, drop trivial ones; drop
// components that are empty as formulas.
Component normalize(Component c);
ConstructibleSet normalize(ConstructibleSet s);

ConstructibleSet intersect(const ConstructibleSet& a, const ConstructibleSet& b);
ConstructibleSet unite(const ConstructibleSet& a, const ConstructibleSet& b);

enum class GuardKind { Def, NonZ, Gcd, Sqrfree };

// def: denominators nonzero. nonZ: one component per coefficient in v of the
// numerator (union). gcd(f, g): lc_v(f) lc_v(g) and Res_v(f/g0, g/g0).
// sqrfree(f): lc_v(f) and Res_v(f, df/dv).
ConstructibleSet build_guard(GuardKind kind, const std::vector<RatFn>& inputs, Var v);

// The single coefficient in v (fewest terms, then lowest degree) whose
// nonvanishing is required; a subset of the nonZ union.
MPoly simplest_coefficient(const MPoly& p, Var v);

// Polynomial conditions in the parameters only. Coefficients involving delta
// are replaced by their norms.
ConstructibleSet omega_proper(const Parametrization& P);
ConstructibleSet omega_surj(const Parametrization& base, const CoveringData& cov);

bool membership(const std::map<Var, Rat>& point, const ConstructibleSet& S);
bool membership(const std::map<Var, Rat>& point, const Component& c);

// Components of the complement of an open set (inequations only). Each
// inequation factor becomes an equation; factors not certified irreducible
// are flagged coarse.
std::vector<Component> complement_components(const ConstructibleSet& S);

// Irreducible by inspection: primitive and of degree one in some variable.
bool certified_irreducible(const MPoly& p);

nlohmann::json to_json(const Component& c);
nlohmann::json to_json(const ConstructibleSet& s);
std::string describe(const Component& c);

} // namespace ratode
