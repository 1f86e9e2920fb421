#include "ratode/verify.hpp"

#include "ratode/polyalg.hpp"
#include "ratode/quadext.hpp"
#include "ratode/upoly.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace ratode {

RatFn total_derivative(const RatFn& y, const std::vector<FunctionalRule>& rules) {
    RatFn d = y.derive(vars::x());
    for (auto& r : rules)
        if (y.depends_on(r.name)) d += y.derive(r.name) * r.q;
    return d;
}

VerifyReport verify_solution(const MPoly& F, const RatFn& y, const std::vector<FunctionalRule>& rules,
                             const RatFn& radicand) {
    std::set<Var> allowed{vars::x(), vars::c(), vars::delta()};
    for (auto v : F.variables()) allowed.insert(v);
    for (auto& r : rules) {
        allowed.insert(r.name);
        for (auto v : r.q.variables()) allowed.insert(v);
    }
    for (auto v : y.variables())
        if (!allowed.count(v)) throw std::invalid_argument("verify_solution: unexpected variable " + v.name());
    RatFn yp = total_derivative(y, rules);
    Fraction f = substitute_fraction(F, {{vars::y(), y}, {vars::z(), yp}});
    RatFn r = RatFn::make(f.num, f.den);
    if (!radicand.is_zero()) r = reduce_delta(r, radicand);
    VerifyReport rep;
    rep.residual = r.num();
    rep.exact_zero = r.is_zero();
    if (!rep.exact_zero) rep.notes = "nonzero residual";
    return rep;
}

namespace {

using Series = std::vector<Rat>;

Series mul(const Series& a, const Series& b, std::size_t n) {
    Series c(n, Rat(0));
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

// Coefficients of F(y(x), y'(x)) up to x^(n-1).
Series evaluate_series(const MPoly& F, const Series& y, std::size_t n) {
    Series yp(n, Rat(0));
    for (std::size_t k = 1; k < y.size() && k - 1 < n; ++k) yp[k - 1] = Rat(static_cast<long>(k)) * y[k];
    Series out(n, Rat(0));
    const unsigned dy = F.degree(vars::y()), dz = F.degree(vars::z());
    std::vector<Series> ypow{Series(n, Rat(0))}, zpow{Series(n, Rat(0))};
    ypow[0][0] = 1;
    zpow[0][0] = 1;
    for (unsigned i = 1; i <= dy; ++i) ypow.push_back(mul(ypow.back(), y, n));
    for (unsigned j = 1; j <= dz; ++j) zpow.push_back(mul(zpow.back(), yp, n));
    for (auto& term : F.terms()) {
        Series s = mul(ypow[term.m.degree(vars::y())], zpow[term.m.degree(vars::z())], n);
        for (std::size_t k = 0; k < n; ++k) out[k] += term.c * s[k];
    }
    return out;
}

} // namespace

std::vector<Rat> series_solution(const MPoly& F, const Rat& y0, const Rat& z0, unsigned order) {
    MPoly Fz = F.derive(vars::z());
    Rat fz = Fz.evaluate({{vars::y(), y0}, {vars::z(), z0}}).constant_value();
    if (fz == 0) throw std::invalid_argument("series_solution: singular initial point");
    Series y{y0, z0};
    for (unsigned n = 2; n <= order; ++n) {
        y.push_back(Rat(0));
        // Coefficient of x^(n-1) is fz * n * y_n plus terms already known.
        Series e = evaluate_series(F, y, n);
        Rat yn = -e[n - 1] / (Rat(static_cast<long>(n)) * fz);
        yn.canonicalize();
        y[n] = yn;
    }
    return y;
}

std::optional<RatFn> pade(const std::vector<Rat>& c, unsigned d) {
    if (c.size() < 2 * d + 1) throw std::invalid_argument("pade: series too short");
    // q_0..q_d with sum_j q_j c_{k-j} = 0 for k = d+1..2d.
    std::vector<std::vector<RatFn>> A;
    for (unsigned k = d + 1; k <= 2 * d; ++k) {
        std::vector<RatFn> row;
        for (unsigned j = 0; j <= d; ++j) row.push_back(k >= j ? RatFn(c[k - j]) : RatFn(0));
        A.push_back(row);
    }
    std::vector<RatFn> q;
    if (A.empty()) q = {RatFn(1)};
    else {
        auto sol = solve_linear(A, std::vector<RatFn>(A.size(), RatFn()));
        if (!sol || sol->nullspace.empty()) return std::nullopt;
        q = sol->nullspace.front();
    }
    const Var x = vars::x();
    MPoly Q, P;
    for (unsigned j = 0; j <= d; ++j) Q += MPoly(q[j].constant_value()) * MPoly::var(x, j);
    for (unsigned k = 0; k <= d; ++k) {
        Rat s = 0;
        for (unsigned j = 0; j <= k; ++j) s += q[j].constant_value() * c[k - j];
        P += MPoly(s) * MPoly::var(x, k);
    }
    if (Q.is_zero()) return std::nullopt;
    return RatFn::make(P, Q);
}

std::vector<RatFn> series_oracle(const MPoly& F, const OracleOptions& opt) {
    for (auto v : F.variables())
        if (v != vars::y() && v != vars::z()) throw std::invalid_argument("series_oracle: F has parameters");
    std::mt19937 rng(opt.seed);
    std::uniform_int_distribution<int> num(-12, 12), den(1, 4);
    const MPoly Fz = F.derive(vars::z());
    std::vector<std::pair<Rat, Rat>> points;
    auto smooth = [&](const Rat& y0, const Rat& z0) {
        return !Fz.evaluate({{vars::y(), y0}, {vars::z(), z0}}).is_zero();
    };
    // Constant solutions first: points with y' = 0.
    MPoly at0 = F.evaluate(vars::z(), Rat(0));
    if (at0.depends_on(vars::y()))
        for (auto& r : rational_roots(at0, vars::y()))
            if (smooth(r, 0) && points.size() < opt.trials) points.push_back({r, Rat(0)});
    for (unsigned attempt = 0; points.size() < opt.trials && attempt < 50 * opt.trials; ++attempt) {
        Rat v(num(rng), den(rng));
        v.canonicalize();
        if (attempt % 2 == 0) {
            MPoly u = F.evaluate(vars::y(), v);
            if (!u.depends_on(vars::z())) continue;
            for (auto& r : rational_roots(u, vars::z()))
                if (smooth(v, r) && points.size() < opt.trials) points.push_back({v, r});
        } else {
            MPoly u = F.evaluate(vars::z(), v);
            if (!u.depends_on(vars::y())) continue;
            for (auto& r : rational_roots(u, vars::y()))
                if (smooth(r, v) && points.size() < opt.trials) points.push_back({r, v});
        }
    }
    if (points.empty()) throw std::runtime_error("series_oracle: no smooth rational initial point found");
    std::vector<RatFn> found;
    const unsigned order = 2 * opt.degree_bound + 2;
    for (auto& [y0, z0] : points) {
        auto s = series_solution(F, y0, z0, order);
        for (unsigned d = 0; d <= opt.degree_bound; ++d) {
            auto p = pade(s, d);
            if (!p) continue;
            if (!verify_solution(F, *p).exact_zero) continue;
            if (std::find(found.begin(), found.end(), *p) == found.end()) found.push_back(*p);
            break;
        }
    }
    return found;
}

ResidualReport numeric_residual(const MPoly& F, const RatFn& y, const std::vector<Rat>& xs) {
    ResidualReport rep;
    std::map<Var, Rat> c0{{vars::c(), Rat(0)}};
    auto yc = specialize(y, c0);
    if (!yc) {
        rep.skipped = static_cast<unsigned>(xs.size());
        return rep;
    }
    RatFn yp = yc->derive(vars::x());
    for (auto& x0 : xs) {
        std::map<Var, Rat> at{{vars::x(), x0}};
        auto a = specialize(*yc, at), b = specialize(yp, at);
        if (!a || !b || !a->is_constant() || !b->is_constant()) {
            ++rep.skipped;
            continue;
        }
        MPoly v = F.evaluate({{vars::y(), a->constant_value()}, {vars::z(), b->constant_value()}});
        if (!v.is_constant()) {
            ++rep.skipped;
            continue;
        }
        rep.max_residual = std::max(rep.max_residual, std::fabs(v.constant_value().get_d()));
    }
    return rep;
}

} // namespace ratode
