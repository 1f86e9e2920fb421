#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ratode/autonomous.hpp"

#include <random>

using namespace ratode;

namespace {

RatFn R(const char* s) { return parse_ratfn(s); }
MPoly M(const char* s) { return parse_ratfn(s).num(); }
Parametrization P(const char* a, const char* b) { return {R(a), R(b), RatFn()}; }

const Var a1 = Var::named("a1"), a2 = Var::named("a2");

// Oracle: substitute y and its derivative, computed by an independent
// quotient rule on numerator and denominator, and clear denominators.
bool satisfies(const MPoly& F, const RatFn& y) {
    const Var x = vars::x();
    const MPoly& n = y.num();
    const MPoly& d = y.den();
    MPoly dn = n.derive(x) * d - n * d.derive(x);  // y' = dn / d^2
    MPoly total;
    for (auto& term : F.terms()) {
        unsigned i = term.m.degree(vars::y()), j = term.m.degree(vars::z());
        MPoly rest = MPoly::monomial(term.m, term.c).substitute(vars::y(), MPoly(1)).substitute(vars::z(), MPoly(1));
        unsigned top = F.degree(vars::y()) + 2 * F.degree(vars::z());
        total += rest * n.pow(i) * d.pow(top - i - 2 * j) * dn.pow(j);
    }
    return total.is_zero();
}

const ComponentReport* find_eq(const std::vector<ComponentReport>& rs, const std::vector<MPoly>& eq) {
    for (auto& r : rs)
        if (r.component.eq == eq) return &r;
    return nullptr;
}

} // namespace

TEST_CASE("feng-gao classification") {
    auto c1 = feng_gao_check(P("t^2/2 - a1*t", "t - a2"));
    CHECK(c1.kind == FGCase::None);
    CHECK(c1.A == M("t - a2"));
    CHECK(c1.B == M("t - a1"));
    auto c2 = feng_gao_check(P("t^2/2 - a1*t", "t - a1"));
    CHECK(c2.kind == FGCase::Direct);
    CHECK(c2.alpha == RatFn(1));
    auto c3 = feng_gao_check(P("t", "a2*t^2"));
    CHECK(c3.kind == FGCase::Moebius);
    CHECK(c3.alpha == R("a2"));
    CHECK(c3.beta == RatFn(0));
    auto c4 = feng_gao_check(P("a1*a2*t/(a1^3*t^2 - a2^3)", "(a1^3*t^2 + a2^3)*a1^2*t^2/(a1^3*t^2 - a2^3)^2"));
    CHECK(c4.kind == FGCase::Moebius);
    CHECK(c4.alpha == R("-a1/a2"));
    CHECK(c4.beta == RatFn(0));
    CHECK(feng_gao_check(P("t", "0")).kind == FGCase::ConstantOnly);
    CHECK_THROWS_AS(feng_gao_check(P("3", "t")), std::invalid_argument);
}

TEST_CASE("solution families") {
    MPoly F = M("4*a1*a2^2*y^4 - 4*a1*a2*y^2*y' + a1*y'^2 + a2*y^2 - y'");
    auto Q = P("a1*a2*t/(a1^3*t^2 - a2^3)", "(a1^3*t^2 + a2^3)*a1^2*t^2/(a1^3*t^2 - a2^3)^2");
    auto fam = solution_from_fg(F, Q, feng_gao_check(Q));
    CHECK(fam.closed_form == R("(x + c)/(a1 - a2*(x + c)^2)"));
    CHECK(satisfies(F, fam.closed_form));
    CHECK(render_solution(fam.closed_form) == "-(x + c)/(a2*(x + c)^2 - a1)");

    MPoly G = M("a2*y^2 - y'");
    auto fam2 = solution_from_fg(G, P("t", "a2*t^2"), feng_gao_check(P("t", "a2*t^2")));
    CHECK(fam2.closed_form == R("-1/(a2*(x + c))"));
    CHECK(satisfies(G, fam2.closed_form));
    // The unscaled family is not a solution at a2 = 2.
    CHECK(!satisfies(M("2*y^2 - y'"), R("-1/(x + c)")));

    auto at = specialize_solution(fam, {{a1, 1}, {a2, 1}});
    REQUIRE(at);
    CHECK(*at == R("(x + c)/(1 - (x + c)^2)"));
    CHECK(satisfies(M("4*y^4 - 4*y^2*y' + y'^2 + y^2 - y'"), *at));
}

TEST_CASE("omega_fg") {
    auto cls = feng_gao_check(P("t^2/2 - a1*t", "t - a2"));
    auto om = omega_fg(P("t^2/2 - a1*t", "t - a2"), cls);
    CHECK(om.single().neq == std::vector<MPoly>{M("a1 - a2")});
    // A/B = t^2 - a: squarefree guard a != 0.
    auto Q = P("t", "t^2 - a");
    auto c = feng_gao_check(Q);
    REQUIRE(c.kind == FGCase::None);
    auto om2 = omega_fg(Q, c);
    CHECK(om2.single().neq == std::vector<MPoly>{M("a")});
    auto at0 = feng_gao_check(P("t", "t^2"));
    CHECK(at0.kind == FGCase::Moebius);
    CHECK(at0.alpha == RatFn(1));
}

TEST_CASE("shift between families") {
    auto k = shift_between(R("(x + c)^2/2 - a1^2/2"), R("x^2/2 - a1*x"));
    REQUIRE(k);
    CHECK(*k == R("-a1"));
    CHECK(!shift_between(R("x^2"), R("x^2 + 1")));
}

TEST_CASE("local solutions example end to end") {
    auto spec = parse_problem("F = 2*y - y'^2 + 2*a1*y' - a2^2 + a2*(2*a1 - 2*y')\nparams: a1, a2\n");
    auto d = constant_parameter_solve(spec);
    CHECK(d.ps1.is_empty());
    REQUIRE(d.ps2.size() == 1);
    CHECK(d.ps2[0].component.eq.empty());
    CHECK(d.ps2[0].component.neq == std::vector<MPoly>{M("a1 - a2")});
    CHECK(d.ps2[0].status == ComponentStatus::NoSolution);
    REQUIRE(d.ps3.size() == 1);
    CHECK(d.undecided.empty());
    CHECK(d.ps3[0].component.eq == std::vector<MPoly>{M("a1 - a2")});
    CHECK(d.ps3[0].component.neq.empty());
    REQUIRE(d.ps3[0].family);
    CHECK(shift_between(d.ps3[0].family->closed_form, R("x^2/2 - a1*x")));
    CHECK(satisfies(M("2*y - y'^2 + a1^2"), d.ps3[0].family->closed_form));
}

TEST_CASE("second example end to end with user parametrizations") {
    auto spec = parse_problem(
        "F = 4*a1*a2^2*y^4 - 4*a1*a2*y^2*y' + a1*y'^2 + a2*y^2 - y'\n"
        "params: a1, a2\n"
        "param: (a1*a2*t/(a1^3*t^2 - a2^3), (a1^3*t^2 + a2^3)*a1^2*t^2/(a1^3*t^2 - a2^3)^2)\n"
        "param: (t, a2*t^2)\n"
        "param: (t, 0)\n");
    auto d = constant_parameter_solve(spec);
    CHECK(d.undecided.empty());
    REQUIRE(d.ps3.size() == 2);
    auto* gen = find_eq(d.ps3, {});
    REQUIRE(gen);
    CHECK(gen->component.neq == std::vector<MPoly>{M("a1"), M("a2")});
    CHECK(gen->family->closed_form == R("(x + c)/(a1 - a2*(x + c)^2)"));
    auto* a1zero = find_eq(d.ps3, {M("a1")});
    REQUIRE(a1zero);
    CHECK(a1zero->component.neq == std::vector<MPoly>{M("a2")});
    CHECK(a1zero->family->closed_form == R("-1/(a2*(x + c))"));
    CHECK(a1zero->fg->alpha == R("a2"));

    REQUIRE(d.ps2.size() == 2);
    auto* red = find_eq(d.ps2, {M("a2")});
    REQUIRE(red);
    CHECK(red->status == ComponentStatus::Reducible);
    CHECK(red->component.neq == std::vector<MPoly>{M("a1")});
    auto* origin = find_eq(d.ps2, {M("a1"), M("a2")});
    REQUIRE(origin);
    CHECK(origin->status == ComponentStatus::ConstantOnly);
    for (auto& r : d.ps3) CHECK(satisfies(spec.F.substitute(r.substitution), r.family->closed_form));
}

TEST_CASE("trivial and degenerate inputs") {
    auto d = constant_parameter_solve(parse_problem("F = y' - 1\n"));
    REQUIRE(d.ps3.size() == 1);
    CHECK(d.ps3[0].fg->kind == FGCase::Direct);
    CHECK(d.ps3[0].family->closed_form == R("x + c"));

    auto e = constant_parameter_solve(parse_problem("F = a*y' + b*y\nparams: a, b\n"));
    REQUIRE(e.ps1.components.size() == 1);
    CHECK(e.ps1.single().eq == std::vector<MPoly>{M("a"), M("b")});
}

TEST_CASE("specialization soundness at random points") {
    auto spec = parse_problem(
        "F = 4*a1*a2^2*y^4 - 4*a1*a2*y^2*y' + a1*y'^2 + a2*y^2 - y'\n"
        "params: a1, a2\n"
        "param: (a1*a2*t/(a1^3*t^2 - a2^3), (a1^3*t^2 + a2^3)*a1^2*t^2/(a1^3*t^2 - a2^3)^2)\n");
    auto d = constant_parameter_solve(spec);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> pick(-9, 9);
    for (auto& r : d.ps3) {
        int done = 0;
        while (done < 30) {
            std::map<Var, Rat> pt{{a1, Rat(pick(rng), 1 + (pick(rng) & 3))}, {a2, Rat(pick(rng), 1 + (pick(rng) & 3))}};
            for (auto& [v, q] : pt) q.canonicalize();
            if (!membership(pt, r.component)) continue;
            auto y = specialize_solution(*r.family, pt);
            REQUIRE(y);
            CHECK(satisfies(spec.F.evaluate(pt), *y));
            ++done;
        }
    }
}
