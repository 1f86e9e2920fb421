#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ratode/autonomous.hpp"
#include "ratode/verify.hpp"

#include <random>

using namespace ratode;

namespace {

RatFn R(const char* s) { return parse_ratfn(s); }
MPoly M(const char* s) { return parse_ratfn(s).num(); }

const Var a1 = Var::named("a1"), a2 = Var::named("a2"), f = Var::named("f");

Rat random_rat(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    Rat q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

bool in_family(const RatFn& family_at_point, const RatFn& y) {
    if (!family_at_point.depends_on(vars::c())) return family_at_point == y;
    auto base = specialize(family_at_point, std::map<Var, Rat>{{vars::c(), Rat(0)}});
    if (!base) return false;
    return shift_between(*base, y).has_value();
}

} // namespace

TEST_CASE("exact verification") {
    auto r1 = verify_solution(M("a2*y^2 - y'"), R("-1/(a2*(x + c))"));
    CHECK(r1.exact_zero);
    CHECK(r1.residual.is_zero());
    std::vector<FunctionalRule> rules{{f, RatFn::var(f)}};
    CHECK(verify_solution(M("y' - 2*y + f"), R("c*f^2 + f"), rules).exact_zero);
    auto r3 = verify_solution(M("y' - 2*y + f"), R("c*f^2"), rules);
    CHECK_FALSE(r3.exact_zero);
    CHECK(r3.residual.primitive_normalized() == M("f"));
    CHECK_THROWS_AS(verify_solution(M("y' - y"), R("u*x")), std::invalid_argument);
    // Derivative through the rule of x itself.
    std::vector<FunctionalRule> xr{{f, RatFn(1)}};
    CHECK(total_derivative(R("f^2 + x"), xr) == R("2*f + 1"));
}

TEST_CASE("series and pade") {
    // y' = y^2 through y(0) = 1: 1/(1 - x).
    auto s = series_solution(M("y' - y^2"), Rat(1), Rat(1), 6);
    for (auto& c : s) CHECK(c == 1);
    auto p = pade(s, 1);
    REQUIRE(p);
    CHECK(*p == R("1/(1 - x)"));
    CHECK_THROWS_AS(series_solution(M("y'^2 - y"), Rat(0), Rat(0), 4), std::invalid_argument);
    CHECK_THROWS_AS(pade(s, 4), std::invalid_argument);
}

TEST_CASE("series oracle examples") {
    auto o1 = series_oracle(M("y' - 2*y + 1"), {2, 10, 1});
    REQUIRE(o1.size() == 1);
    CHECK(o1[0] == R("1/2"));
    auto o2 = series_oracle(M("2*y - y'^2 + 1"), {3, 10, 1});
    CHECK_FALSE(o2.empty());
    for (auto& y : o2) {
        CHECK(verify_solution(M("2*y - y'^2 + 1"), y).exact_zero);
        CHECK(in_family(R("(x + c)^2/2 - 1/2"), y));
    }
    // Only the zero solution; exp(x) has no exact Pade approximant.
    auto o3 = series_oracle(M("y' - y"), {5, 10, 1});
    REQUIRE(o3.size() == 1);
    CHECK(o3[0].is_zero());
    CHECK_THROWS_AS(series_oracle(M("a*y' - y"), {2, 3, 1}), std::invalid_argument);
    CHECK_THROWS_AS(series_oracle(M("y'^2 + 1"), {2, 3, 1}), std::runtime_error);
}

TEST_CASE("numeric residual") {
    std::vector<Rat> xs{Rat(1), Rat(2), Rat(3, 2), Rat(0)};
    auto r1 = numeric_residual(M("y' - y^2"), R("1/(1 - x)"), xs);
    CHECK(r1.max_residual < 1e-12);
    CHECK(r1.skipped == 1);
    auto r2 = numeric_residual(M("y' - y^2"), R("1/(1 - x) + 1/1000"), {Rat(2), Rat(3)});
    CHECK(r2.max_residual > 0);
}

TEST_CASE("oracle agrees with the solver on solved components") {
    auto spec = parse_problem(
        "F = 4*a1*a2^2*y^4 - 4*a1*a2*y^2*y' + a1*y'^2 + a2*y^2 - y'\n"
        "params: a1, a2\n"
        "param: (a1*a2*t/(a1^3*t^2 - a2^3), (a1^3*t^2 + a2^3)*a1^2*t^2/(a1^3*t^2 - a2^3)^2)\n"
        "param: (t, a2*t^2)\n");
    auto d = constant_parameter_solve(spec);
    std::mt19937 rng(11);
    int nonconstant = 0;
    for (auto& r : d.ps3) {
        int done = 0;
        while (done < 4) {
            std::map<Var, Rat> pt{{a1, random_rat(rng)}, {a2, random_rat(rng)}};
            for (auto& [v, q] : r.substitution) pt[v] = q.evaluate(pt).constant_value();
            if (!membership(pt, r.component)) continue;
            auto fam = specialize_solution(*r.family, pt);
            REQUIRE(fam);
            MPoly F = spec.F.evaluate(pt);
            for (auto& y : series_oracle(F, {6, 4, static_cast<unsigned>(done + 1)})) {
                if (y.is_constant()) continue;
                CHECK(in_family(*fam, y));
                ++nonconstant;
            }
            ++done;
        }
    }
    CHECK(nonconstant > 0);
}

TEST_CASE("oracle finds nothing nonconstant off the solved locus") {
    auto spec = parse_problem("F = 2*y - y'^2 + 2*a1*y' - a2^2 + a2*(2*a1 - 2*y')\nparams: a1, a2\n");
    auto d = constant_parameter_solve(spec);
    REQUIRE(d.ps2.size() == 1);
    std::mt19937 rng(5);
    int done = 0;
    while (done < 4) {
        std::map<Var, Rat> pt{{a1, random_rat(rng)}, {a2, random_rat(rng)}};
        if (!membership(pt, d.ps2[0].component)) continue;
        for (auto& y : series_oracle(spec.F.evaluate(pt), {6, 10, 1})) CHECK(y.is_constant());
        ++done;
    }
}
