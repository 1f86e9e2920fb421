#include "ratode/curve.hpp"

#include "ratode/polyalg.hpp"

#include <algorithm>

namespace ratode {

namespace {

const Var T = vars::t();

unsigned curve_degree(const MPoly& F) {
    unsigned d = 0;
    for (auto& term : F.terms()) d = std::max(d, term.m.degree(vars::y()) + term.m.degree(vars::z()));
    return d;
}

// Homogeneous part of degree k in (y, z).
MPoly homogeneous_part(const MPoly& F, unsigned k) {
    std::vector<MPoly::Term> out;
    for (auto& term : F.terms())
        if (term.m.degree(vars::y()) + term.m.degree(vars::z()) == k) out.push_back(term);
    return MPoly::from_terms(std::move(out));
}

unsigned low_curve_degree(const MPoly& F) {
    unsigned d = ~0u;
    for (auto& term : F.terms()) d = std::min(d, term.m.degree(vars::y()) + term.m.degree(vars::z()));
    return d;
}

RatFn poly_coeff(const MPoly& F, Var v, unsigned e) { return RatFn(F.coeff(v, e)); }

bool is_const_in_t(const RatFn& r) { return !r.depends_on(T); }

Parametrization make_param(const RatFn& a, const RatFn& b, const RatFn& radicand = RatFn()) {
    Parametrization P{a, b, radicand};
    if (P.uses_delta()) {
        P.p1 = reduce_delta(P.p1, radicand);
        P.p2 = reduce_delta(P.p2, radicand);
        if (!P.p1.depends_on(vars::delta()) && !P.p2.depends_on(vars::delta())) P.radicand = RatFn();
    }
    return P;
}

// Accept a candidate only when it verifies and is proper.
std::optional<Parametrization> accept(const MPoly& F, const Parametrization& P) {
    if (!verify_parametrization(F, P)) return std::nullopt;
    if (tracing_index(P) != 1) return std::nullopt;
    if (!degrees_consistent(F, P)) throw ReducibleCurve("a proper parametrization covers only a component of F");
    return P;
}

// Lines through (y0, z0) with slope t: z - z0 = t (y - y0).
std::optional<Parametrization> lines_through(const MPoly& F, const RatFn& y0, const RatFn& z0, const RatFn& radicand) {
    const RatFn Y = RatFn::var(vars::y()), t = RatFn::var(T);
    // Shift the point to the origin, then cut with Z = t Y.
    RatFn G = RatFn(F).substitute({{vars::y(), y0 + Y}, {vars::z(), z0 + t * Y}});
    if (!radicand.is_zero()) G = reduce_delta(G, radicand);
    MPoly g = G.num();
    unsigned low = g.low_degree(vars::y());
    if (low == 0) return std::nullopt;
    MPoly h = *g.divide_exact(MPoly::var(vars::y(), low));
    if (h.degree(vars::y()) != 1) return std::nullopt;
    RatFn h0 = poly_coeff(h, vars::y(), 0), h1 = poly_coeff(h, vars::y(), 1);
    RatFn yy = -h0 / h1;
    if (!radicand.is_zero()) yy = reduce_delta(yy, radicand);
    return accept(F, make_param(y0 + yy, z0 + t * yy, radicand));
}

std::optional<Parametrization> conic(const MPoly& F) {
    const Var y = vars::y(), z = vars::z();
    const RatFn t = RatFn::var(T), Y = RatFn::var(y);
    MPoly F2 = homogeneous_part(F, 2);
    // F2(1, m) = A m^2 + B m + C
    RatFn A = RatFn(F2.coeff(z, 2)), B = RatFn(F2.coeff(z, 1).coeff(y, 1)), C = RatFn(F2.coeff(y, 2));
    if (!A.is_zero()) {
        RatFn disc = B * B - RatFn(4) * A * C;
        std::vector<RatFn> slopes;
        if (disc.is_zero()) {
            slopes.push_back(-B / (RatFn(2) * A));
        } else {
            auto sn = sqrt_exact(disc.num());
            auto sd = sqrt_exact(disc.den());
            if (sn && sd) {
                RatFn sq = RatFn::make(*sn, *sd);
                RatFn m1 = (-B - sq) / (RatFn(2) * A), m2 = (-B + sq) / (RatFn(2) * A);
                if (m1.is_constant() && m2.is_constant() && m2.constant_value() < m1.constant_value()) std::swap(m1, m2);
                slopes = {m1, m2};
            }
        }
        // Lines through a point at infinity: z = m y + t.
        for (auto& m : slopes) {
            MPoly G = RatFn(F).substitute(z, m * Y + t).num();
            if (G.degree(y) != 1) continue;
            RatFn yy = -poly_coeff(G, y, 0) / poly_coeff(G, y, 1);
            if (auto P = accept(F, make_param(yy, m * yy + t))) return P;
        }
    }
    // Finite points on the axes.
    auto axis_root = [&](Var keep, Var zeroed) -> std::optional<RatFn> {
        MPoly g = F.substitute(zeroed, MPoly());
        if (g.degree(keep) != 2) return std::nullopt;
        RatFn a = poly_coeff(g, keep, 2), b = poly_coeff(g, keep, 1), c = poly_coeff(g, keep, 0);
        RatFn disc = b * b - RatFn(4) * a * c;
        auto sn = sqrt_exact(disc.num());
        auto sd = sqrt_exact(disc.den());
        if (!sn || !sd) return std::nullopt;
        return (-b - RatFn::make(*sn, *sd)) / (RatFn(2) * a);
    };
    if (auto z0 = axis_root(z, y)) {
        if (auto P = lines_through(F, RatFn(), *z0, RatFn())) return P;
    }
    if (auto y0 = axis_root(y, z)) {
        if (auto P = lines_through(F, *y0, RatFn(), RatFn())) return P;
    }
    // One square root: a point on y = 0 over K(a)(delta).
    MPoly g = F.substitute(y, MPoly());
    if (g.degree(z) == 2) {
        RatFn a = poly_coeff(g, z, 2), b = poly_coeff(g, z, 1), c = poly_coeff(g, z, 0);
        RatFn disc = b * b - RatFn(4) * a * c;
        if (!disc.is_zero() && !disc.depends_on(T)) {
            RatFn z0 = (-b + RatFn::var(vars::delta())) / (RatFn(2) * a);
            if (auto P = lines_through(F, RatFn(), z0, disc)) return P;
        }
    }
    return std::nullopt;
}

std::optional<Parametrization> singular_point_lines(const MPoly& F) {
    const Var y = vars::y(), z = vars::z();
    const unsigned d = curve_degree(F);
    MPoly Fz = F.derive(z);
    if (Fz.is_zero() || !F.depends_on(y)) return std::nullopt;
    MPoly R = resultant(F, Fz, z);
    if (R.is_zero() || !R.depends_on(y)) return std::nullopt;
    auto split = split_linear_quadratic(R, y);
    for (auto& [lin, mult] : split.linear) {
        if (mult + 1 < d - 1) continue;
        RatFn y0 = -poly_coeff(lin, y, 0) / poly_coeff(lin, y, 1);
        MPoly f0 = RatFn(F).substitute(y, y0).num();
        MPoly f1 = RatFn(Fz).substitute(y, y0).num();
        if (f0.is_zero() || f1.is_zero()) continue;
        MPoly G = gcd_poly(f0, f1, z);
        for (auto& [factor, m] : squarefree_decompose(G, z)) {
            if (factor.degree(z) != 1) continue;
            RatFn z0 = -poly_coeff(factor, z, 0) / poly_coeff(factor, z, 1);
            MPoly shifted = RatFn(F).substitute({{y, y0 + RatFn::var(y)}, {z, z0 + RatFn::var(z)}}).num();
            if (low_curve_degree(shifted) != d - 1) continue;
            if (auto P = lines_through(F, y0, z0, RatFn())) return P;
        }
    }
    return std::nullopt;
}

bool nonzero_at(const MPoly& p, const Rat& v) { return !p.evaluate(T, v).is_zero(); }

RatFn at(const RatFn& r, const Rat& v) {
    auto s = specialize(r, std::map<Var, Rat>{{T, v}});
    if (!s) throw NotDefined("parametrization undefined at the witness value");
    return *s;
}

} // namespace

PlaneCurve PlaneCurve::of(const MPoly& F) {
    return {F, F.degree(vars::y()), F.degree(vars::z()), Irreducibility::Assumed};
}

RatFn reduce_for(const Parametrization& P, const RatFn& r) {
    return P.uses_delta() ? reduce_delta(r, P.radicand) : r;
}

RatFn evaluate_on(const MPoly& F, const Parametrization& P) {
    Fraction f = substitute_fraction(F, {{vars::y(), P.p1}, {vars::z(), P.p2}});
    return reduce_for(P, RatFn::make(f.num, f.den));
}

bool verify_parametrization(const MPoly& F, const Parametrization& P) {
    if (is_const_in_t(P.p1) && is_const_in_t(P.p2)) return false;
    return evaluate_on(F, P).is_zero();
}

unsigned rational_degree(const RatFn& r, Var v) { return std::max(r.num().degree(v), r.den().degree(v)); }

unsigned tracing_index(const Parametrization& P) {
    const Var s = vars::s();
    auto h = [&](const RatFn& r) {
        MPoly S = MPoly::var(s);
        return r.num() * r.den().substitute(T, S) - r.num().substitute(T, S) * r.den();
    };
    MPoly h1 = h(P.p1), h2 = h(P.p2);
    if (h1.is_zero() && h2.is_zero()) throw std::invalid_argument("tracing_index: both components constant");
    MPoly g = h1.is_zero() ? h2 : h2.is_zero() ? h1 : gcd(h1, h2);
    return g.degree(s);
}

RatFn invert_parametrization(const Parametrization& P) {
    if (tracing_index(P) != 1) throw ImproperParametrization("parametrization is not proper");
    const Var s = vars::s();
    const RatFn Y = RatFn::var(vars::y()), Z = RatFn::var(vars::z());
    auto check = [&](const RatFn& I) {
        RatFn back = reduce_for(P, I.substitute({{vars::y(), P.p1}, {vars::z(), P.p2}}));
        if (!(back == RatFn::var(T))) throw std::logic_error("inverse failed verification");
        return I;
    };
    // A component of degree one is solved directly.
    for (auto [r, W] : {std::pair{P.p1, Y}, std::pair{P.p2, Z}}) {
        if (rational_degree(r, T) != 1) continue;
        RatFn a = poly_coeff(r.num(), T, 1), b = poly_coeff(r.num(), T, 0);
        RatFn c = poly_coeff(r.den(), T, 1), d = poly_coeff(r.den(), T, 0);
        return check(reduce_for(P, (b - d * W) / (c * W - a)));
    }
    MPoly S = MPoly::var(s);
    MPoly A = P.p1.num().substitute(T, S) - MPoly::var(vars::y()) * P.p1.den().substitute(T, S);
    MPoly B = P.p2.num().substitute(T, S) - MPoly::var(vars::z()) * P.p2.den().substitute(T, S);
    if (A.degree(s) < 2 || B.degree(s) < 2) throw std::logic_error("unexpected component degrees in inversion");
    MPoly S1 = subresultant(A, B, s, 1);
    RatFn s1 = poly_coeff(S1, s, 1), s0 = poly_coeff(S1, s, 0);
    if (s1.is_zero()) throw std::logic_error("degenerate subresultant in inversion");
    return check(reduce_for(P, -s0 / s1));
}

std::optional<RatFn> reparametrization_map(const Parametrization& P, const Parametrization& Q) {
    RatFn I = invert_parametrization(P);
    RatFn m;
    try {
        m = reduce_for(P, I.substitute({{vars::y(), Q.p1}, {vars::z(), Q.p2}}));
    } catch (const NotDefined&) {
        return std::nullopt;
    }
    if (rational_degree(m, T) != 1) return std::nullopt;
    try {
        if (!(reduce_for(P, P.p1.substitute(T, m)) == Q.p1) || !(reduce_for(P, P.p2.substitute(T, m)) == Q.p2))
            return std::nullopt;
    } catch (const NotDefined&) {
        return std::nullopt;
    }
    return m;
}

std::optional<CurvePoint> critical_point(const Parametrization& P) {
    const RatFn* comps[2] = {&P.p1, &P.p2};
    RatFn lim[2];
    for (int i = 0; i < 2; ++i) {
        const RatFn& r = *comps[i];
        unsigned dn = r.num().degree(T), dd = r.den().degree(T);
        if (dn > dd) return std::nullopt;
        lim[i] = dn == dd ? reduce_for(P, RatFn(r.num().lc(T)) / RatFn(r.den().lc(T))) : RatFn();
    }
    // Attained iff g1, g2 share a root that is not a pole.
    MPoly g[2];
    for (int i = 0; i < 2; ++i)
        g[i] = lim[i].num() * comps[i]->den() - lim[i].den() * comps[i]->num();
    MPoly G = g[0].is_zero() ? g[1] : g[1].is_zero() ? g[0] : gcd(g[0], g[1]);
    MPoly poles = P.p1.den() * P.p2.den();
    while (G.depends_on(T)) {
        MPoly d = gcd(G, poles);
        if (!d.depends_on(T)) break;
        G = *G.divide_exact(d);
    }
    if (G.depends_on(T)) return std::nullopt;
    return CurvePoint{lim[0], lim[1]};
}

CoveringData surjective_covering(const Parametrization& P) {
    if (is_const_in_t(P.p1) || is_const_in_t(P.p2))
        throw std::invalid_argument("surjective_covering: axis-parallel line");
    CoveringData cov;
    cov.parts.push_back(P);
    auto c0 = critical_point(P);
    cov.critical.push_back(c0);
    cov.attained_by.push_back(-1);
    cov.witness.push_back(Rat(0));
    if (!c0) return cov;

    const MPoly polys[4] = {P.p1.num(), P.p1.den(), P.p2.num(), P.p2.den()};
    auto all_nonzero = [&](const Rat& v) {
        return std::all_of(std::begin(polys), std::end(polys), [&](const MPoly& p) { return nonzero_at(p, v); });
    };
    Rat a = 0;
    while (!all_nonzero(a)) a += 1;
    // mu is tested on P(t + a), i.e. at the value mu + a of P.
    Rat mu = 0;
    while (true) {
        Rat v = mu + a;
        if (all_nonzero(v)) {
            RatFn d1 = at(P.p1, v) - c0->y, d2 = at(P.p2, v) - c0->z;
            if (!reduce_for(P, d1).is_zero() || !reduce_for(P, d2).is_zero()) break;
        }
        mu += 1;
    }
    cov.shift = a;
    cov.mu = mu;
    RatFn t = RatFn::var(T);
    RatFn m = RatFn(1) / t + RatFn(mu + a);
    Parametrization P2 = make_param(P.p1.substitute(T, m), P.p2.substitute(T, m), P.radicand);
    cov.parts.push_back(P2);
    auto c1 = critical_point(P2);
    cov.critical.push_back(c1);
    // Part 2 reaches the limit point of part 1 at t = 0, part 1 reaches
    // P(mu + a) at t = mu + a.
    if (!(reduce_for(P, at(P2.p1, 0)) == c0->y) || !(reduce_for(P, at(P2.p2, 0)) == c0->z))
        throw std::logic_error("covering witness at t = 0 failed");
    cov.attained_by[0] = 1;
    cov.witness[0] = 0;
    if (c1) {
        if (!(reduce_for(P, at(P.p1, mu + a)) == c1->y) || !(reduce_for(P, at(P.p2, mu + a)) == c1->z))
            throw std::logic_error("covering witness at mu + a failed");
        cov.attained_by.push_back(0);
        cov.witness.push_back(mu + a);
    } else {
        cov.attained_by.push_back(-1);
        cov.witness.push_back(Rat(0));
    }
    return cov;
}

std::optional<std::string> reducibility_evidence(const MPoly& F) {
    const Var y = vars::y(), z = vars::z();
    if (!F.depends_on(y) && F.degree(z) >= 2) return "F is free of y and has degree at least 2 in y'";
    if (!F.depends_on(z) && F.degree(y) >= 2) return "F is free of y' and has degree at least 2 in y";
    MPoly cy = content(F, y);
    if (cy.depends_on(z) && F.depends_on(y)) return "F has a factor free of y";
    MPoly cz = content(F, z);
    if (cz.depends_on(y) && F.depends_on(z)) return "F has a factor free of y'";
    for (Var v : {z, y}) {
        if (!F.depends_on(v)) continue;
        for (auto& f : squarefree_decompose(F, v))
            if (f.multiplicity > 1) return "F is not squarefree";
    }
    return std::nullopt;
}

bool degrees_consistent(const MPoly& F, const Parametrization& P) {
    return rational_degree(P.p1, T) == F.degree(vars::z()) && rational_degree(P.p2, T) == F.degree(vars::y());
}

std::variant<Parametrization, Unsupported> parametrize_special(const MPoly& F) {
    if (auto why = reducibility_evidence(F)) throw ReducibleCurve(*why);
    const Var y = vars::y(), z = vars::z();
    const RatFn t = RatFn::var(T);
    if (F.degree(z) == 1) {
        RatFn c1 = poly_coeff(F, z, 1), c0 = poly_coeff(F, z, 0);
        RatFn p2 = (-c0 / c1).substitute(y, t);
        if (auto P = accept(F, make_param(t, p2))) return *P;
    }
    if (F.degree(y) == 1) {
        RatFn d1 = poly_coeff(F, y, 1), d0 = poly_coeff(F, y, 0);
        RatFn p1 = (-d0 / d1).substitute(z, t);
        if (auto P = accept(F, make_param(p1, t))) return *P;
    }
    const unsigned d = curve_degree(F);
    if (d == 2) {
        if (auto P = conic(F)) return *P;
        return Unsupported{"conic without a usable point"};
    }
    if (auto P = singular_point_lines(F)) return *P;
    return Unsupported{"no point of multiplicity " + std::to_string(d - 1) + " found on a curve of degree " +
                       std::to_string(d)};
}

Irreducibility check_irreducible(const MPoly& F, const std::vector<Var>& params, std::mt19937& rng, int rounds) {
    if (reducibility_evidence(F)) return Irreducibility::Failed;
    std::uniform_int_distribution<int> pick(-20, 20);
    int reducible_rounds = 0, tried = 0;
    for (int attempt = 0; tried < rounds && attempt < rounds * 10; ++attempt) {
        std::map<Var, Rat> pt;
        for (auto v : params) pt[v] = Rat(pick(rng), 1 + (pick(rng) & 3));
        for (auto& [v, val] : pt) val.canonicalize();
        MPoly G = F.evaluate(pt);
        if (G.degree(vars::y()) != F.degree(vars::y()) || G.degree(vars::z()) != F.degree(vars::z())) continue;
        if (curve_degree(G) != curve_degree(F)) continue;
        ++tried;
        bool evidence = reducibility_evidence(G).has_value();
        if (!evidence && curve_degree(G) >= 2) {
            // A rational line component meets every line in a rational point.
            bool all_lines_split = true;
            for (int l = 0; l < 3 && all_lines_split; ++l) {
                Rat alpha(pick(rng), 7), beta(pick(rng), 5);
                alpha.canonicalize();
                beta.canonicalize();
                MPoly u = G.substitute(vars::y(), MPoly(alpha) * MPoly::var(vars::z()) + MPoly(beta));
                if (!u.depends_on(vars::z()) || rational_roots(u, vars::z()).empty()) all_lines_split = false;
            }
            evidence = all_lines_split;
        }
        if (evidence) ++reducible_rounds;
    }
    if (tried > 0 && reducible_rounds == tried) return Irreducibility::Failed;
    return Irreducibility::CheckedProbabilistic;
}

} // namespace ratode
