#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ratode/polyalg.hpp"

#include <random>

using namespace ratode;

namespace {

MPoly V(const char* n) { return MPoly::var(Var::named(n)); }

// Laplace expansion along the first row. Kept deliberately naive so it shares
// nothing with the library's elimination code.
MPoly laplace_det(const std::vector<std::vector<MPoly>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    MPoly acc;
    for (std::size_t col = 0; col < n; ++col) {
        if (m[0][col].is_zero()) continue;
        std::vector<std::vector<MPoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<MPoly> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != col) row.push_back(m[r][c]);
            minor.push_back(row);
        }
        MPoly term = m[0][col] * laplace_det(minor);
        if (col % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

MPoly sylvester_oracle(const MPoly& p, const MPoly& q, Var v) {
    unsigned m = p.degree(v), n = q.degree(v);
    auto pc = p.coeffs(v), qc = q.coeffs(v);
    unsigned N = m + n;
    std::vector<std::vector<MPoly>> mat(N, std::vector<MPoly>(N));
    for (unsigned r = 0; r < n; ++r)
        for (unsigned e = 0; e <= m; ++e) mat[r][r + (m - e)] = pc[e];
    for (unsigned r = 0; r < m; ++r)
        for (unsigned e = 0; e <= n; ++e) mat[n + r][r + (n - e)] = qc[e];
    return laplace_det(mat);
}

MPoly random_poly(std::mt19937& rng, const std::vector<Var>& vs, unsigned maxdeg, int terms) {
    std::uniform_int_distribution<int> coef(-5, 5), ex(0, static_cast<int>(maxdeg));
    MPoly p;
    for (int i = 0; i < terms; ++i) {
        MPoly t(coef(rng));
        for (auto v : vs) t *= MPoly::var(v, ex(rng));
        p += t;
    }
    return p;
}

} // namespace

TEST_CASE("resultant sign convention on small cases") {
    Var t = vars::t();
    MPoly a = V("a");
    CHECK(resultant(V("t") * V("t") - a, V("t"), t) == -a);
    CHECK(resultant(V("t") - V("a2"), V("t") - V("a1"), t) == V("a2") - V("a1"));
    CHECK(resultant(MPoly(3), V("t") * V("t") + MPoly(1), t) == MPoly(9));
    CHECK_THROWS_AS(resultant(a, MPoly(2), t), std::invalid_argument);
}

TEST_CASE("resultant agrees with the Sylvester determinant") {
    std::mt19937 rng(7);
    Var t = vars::t();
    std::vector<Var> vs{t, Var::named("a1"), Var::named("a2")};
    for (int trial = 0; trial < 40; ++trial) {
        MPoly p = random_poly(rng, vs, 3, 4), q = random_poly(rng, vs, 2, 3);
        if (!p.depends_on(t) || !q.depends_on(t)) continue;
        CHECK(resultant(p, q, t) == sylvester_oracle(p, q, t));
        CHECK(resultant(q, p, t) == sylvester_oracle(q, p, t));
    }
}

TEST_CASE("gcd recovers a planted common factor") {
    std::mt19937 rng(11);
    std::vector<Var> vs{vars::t(), Var::named("a1"), Var::named("a2")};
    for (int trial = 0; trial < 25; ++trial) {
        MPoly f = random_poly(rng, vs, 2, 3), g = random_poly(rng, vs, 2, 3), h = random_poly(rng, vs, 2, 3);
        if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
        MPoly d = gcd(f * g, f * h);
        CHECK((f * g).divide_exact(d).has_value());
        CHECK((f * h).divide_exact(d).has_value());
        CHECK(d.divide_exact(normalize_unit(f)).has_value());
        MPoly rest = gcd(*(f * g).divide_exact(d), *(f * h).divide_exact(d));
        CHECK(rest.is_constant());
    }
}

TEST_CASE("gcd special inputs") {
    MPoly t = V("t");
    CHECK(gcd(MPoly(), MPoly()).is_zero());
    CHECK(gcd(MPoly(), -2 * t) == t);
    CHECK(gcd(t * t * V("a"), t * V("a") * V("a")) == t * V("a"));
    CHECK(gcd(t * t - 1, t * t - 2 * t + 1) == t - 1);
}

TEST_CASE("subresultant of index one") {
    Var s = vars::s();
    MPoly S = V("s"), y = V("y");
    MPoly p = S * S - y, q = S * S * S - y * S + S - V("z");
    MPoly s1 = subresultant(p, q, s, 1);
    CHECK(s1.degree(s) <= 1);
    CHECK(!s1.is_zero());
    // S_0 is the resultant.
    CHECK(subresultant(p, q, s, 0) == resultant(p, q, s));
}

TEST_CASE("squarefree decomposition") {
    Var f = Var::named("f");
    MPoly F = V("f");
    auto d = squarefree_decompose(F * F * F - F * F, f);
    REQUIRE(d.size() == 2);
    CHECK(d[0].factor == F - 1);
    CHECK(d[0].multiplicity == 1);
    CHECK(d[1].factor == F);
    CHECK(d[1].multiplicity == 2);
}

TEST_CASE("linear and quadratic splitting") {
    Var f = Var::named("f");
    MPoly F = V("f");
    auto sp = split_linear_quadratic(F.pow(5) + F + 1, f);
    CHECK(sp.linear.empty());
    REQUIRE(sp.quadratic.size() == 1);
    CHECK(sp.quadratic[0].factor == F * F + F + 1);
    CHECK(sp.residual == F.pow(3) - F * F + 1);

    auto sq = split_linear_quadratic(F * F + 1, f);
    REQUIRE(sq.quadratic.size() == 1);
    CHECK(sq.residual == MPoly(1));

    auto lin = split_linear_quadratic(F.pow(3) - F * F, f);
    REQUIRE(lin.linear.size() == 2);
    CHECK(lin.quadratic.empty());
    CHECK(rational_roots(6 * F * F - 5 * F + 1, f) == std::vector<Rat>{Rat(1, 3), Rat(1, 2)});
}

TEST_CASE("exact square roots") {
    MPoly a = V("a1"), t = V("t");
    auto r = sqrt_exact((a * t - 3 * a + 1).pow(2));
    REQUIRE(r);
    CHECK((*r * *r) == (a * t - 3 * a + 1).pow(2));
    CHECK(!sqrt_exact(a * a + 1));
    CHECK(sqrt_exact(Rat(9, 4)) == Rat(3, 2));
    CHECK(!sqrt_exact(Rat(2)));
}
