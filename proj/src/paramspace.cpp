#include "ratode/paramspace.hpp"

#include "ratode/expr.hpp"
#include "ratode/polyalg.hpp"

#include <algorithm>
#include <set>

namespace ratode {

namespace {

const Var T = vars::t();

bool poly_less(const MPoly& a, const MPoly& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    if (a.size() != b.size()) return a.size() < b.size();
    return render(a) < render(b);
}

void sort_unique(std::vector<MPoly>& v) {
    std::sort(v.begin(), v.end(), poly_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void collect_factors(const MPoly& p, std::vector<MPoly>& out) {
    if (p.is_constant()) return;
    auto vs = p.variables();
    Var v = vs.front();
    MPoly c = content(p, v);
    collect_factors(c, out);
    for (auto& f : squarefree_decompose(p, v)) {
        // Peel contents in the remaining variables too.
        bool split = false;
        for (auto u : f.factor.variables()) {
            if (u == v) continue;
            MPoly cu = content(f.factor, u);
            if (!cu.is_constant()) {
                collect_factors(cu, out);
                collect_factors(*f.factor.divide_exact(cu), out);
                split = true;
                break;
            }
        }
        if (!split) out.push_back(normalize_unit(f.factor));
    }
}

// Replace p(delta) by its norm over the base field.
MPoly strip_delta(const MPoly& p, const RatFn& radicand) {
    if (!p.depends_on(vars::delta())) return p;
    QuadExtScalar q = QuadExtScalar::from_ratfn(RatFn(p), radicand);
    return q.norm().num();
}

MPoly params_only(const MPoly& p, const Parametrization& P) {
    return P.uses_delta() ? strip_delta(p, P.radicand) : p;
}

// Coefficient condition for a polynomial that may still contain t: keep a
// single simplest coefficient in t.
MPoly param_condition(const MPoly& p, const Parametrization& P) {
    MPoly q = params_only(p, P);
    return q.depends_on(T) ? simplest_coefficient(q, T) : q;
}

MPoly cofactor_resultant(const MPoly& f, const MPoly& g, Var v) {
    if (!f.depends_on(v) && !g.depends_on(v)) return MPoly(1);
    return resultant(f, g, v);
}

} // namespace

ConstructibleSet ConstructibleSet::open(const std::vector<MPoly>& neqs) {
    Component c;
    c.neq = neqs;
    return normalize(ConstructibleSet{{c}});
}

bool ConstructibleSet::is_whole() const {
    return std::any_of(components.begin(), components.end(), [](const Component& c) { return c.eq.empty() && c.neq.empty(); });
}

const Component& ConstructibleSet::single() const {
    if (components.size() != 1) throw std::logic_error("expected a single component");
    return components.front();
}

std::vector<MPoly> split_factors(const MPoly& p) {
    std::vector<MPoly> out;
    if (p.is_zero()) return out;
    collect_factors(p, out);
    sort_unique(out);
    return out;
}

Component normalize(Component c) {
    std::vector<MPoly> neq, eq;
    for (auto& p : c.neq) {
        if (p.is_zero()) return Component{{MPoly(1)}, {}, c.coarse};  // empty marker
        for (auto& f : split_factors(p)) neq.push_back(f);
    }
    for (auto& p : c.eq) {
        if (p.is_zero()) continue;
        if (p.is_constant()) return Component{{MPoly(1)}, {}, c.coarse};
        eq.push_back(normalize_unit(p));
    }
    sort_unique(neq);
    sort_unique(eq);
    // An inequation that is one of the equations makes the component empty.
    for (auto& e : eq)
        if (std::find(neq.begin(), neq.end(), e) != neq.end()) return Component{{MPoly(1)}, {}, c.coarse};
    return Component{eq, neq, c.coarse};
}

ConstructibleSet normalize(ConstructibleSet s) {
    ConstructibleSet out;
    for (auto& c : s.components) {
        Component n = normalize(c);
        if (n.eq.size() == 1 && n.eq[0] == MPoly(1)) continue;
        if (std::find(out.components.begin(), out.components.end(), n) == out.components.end()) out.components.push_back(n);
    }
    return out;
}

ConstructibleSet intersect(const ConstructibleSet& a, const ConstructibleSet& b) {
    ConstructibleSet out;
    for (auto& x : a.components)
        for (auto& y : b.components) {
            Component c = x;
            c.eq.insert(c.eq.end(), y.eq.begin(), y.eq.end());
            c.neq.insert(c.neq.end(), y.neq.begin(), y.neq.end());
            c.coarse = x.coarse || y.coarse;
            out.components.push_back(c);
        }
    return normalize(out);
}

ConstructibleSet unite(const ConstructibleSet& a, const ConstructibleSet& b) {
    ConstructibleSet out = a;
    out.components.insert(out.components.end(), b.components.begin(), b.components.end());
    return normalize(out);
}

MPoly simplest_coefficient(const MPoly& p, Var v) {
    MPoly best;
    for (auto& c : p.coeffs(v)) {
        if (c.is_zero()) continue;
        if (best.is_zero() || c.size() < best.size() || (c.size() == best.size() && c.total_degree() < best.total_degree()))
            best = c;
    }
    return best;
}

ConstructibleSet build_guard(GuardKind kind, const std::vector<RatFn>& inputs, Var v) {
    for (auto& r : inputs)
        if (r.is_zero()) throw std::invalid_argument("build_guard: zero input");
    switch (kind) {
    case GuardKind::Def: {
        std::vector<MPoly> neq;
        for (auto& r : inputs) neq.push_back(r.den());
        return ConstructibleSet::open(neq);
    }
    case GuardKind::NonZ: {
        ConstructibleSet out = ConstructibleSet::whole();
        for (auto& r : inputs) {
            ConstructibleSet u;
            for (auto& c : r.num().coeffs(v))
                if (!c.is_zero()) u.components.push_back(Component{{}, {c}, false});
            out = intersect(out, normalize(u));
        }
        return out;
    }
    case GuardKind::Gcd: {
        if (inputs.size() != 2) throw std::invalid_argument("build_guard gcd: needs two inputs");
        MPoly f = inputs[0].num(), g = inputs[1].num();
        MPoly g0 = gcd(f, g);
        return ConstructibleSet::open(
            {f.lc(v) * g.lc(v), cofactor_resultant(*f.divide_exact(g0), *g.divide_exact(g0), v)});
    }
    case GuardKind::Sqrfree: {
        std::vector<MPoly> neq;
        for (auto& r : inputs) {
            MPoly f = r.num();
            neq.push_back(f.lc(v));
            if (f.depends_on(v)) neq.push_back(resultant(f, f.derive(v), v));
        }
        return ConstructibleSet::open(neq);
    }
    }
    return ConstructibleSet::whole();
}

ConstructibleSet omega_proper(const Parametrization& P) {
    std::vector<MPoly> neq;
    const MPoly polys[2][2] = {{P.p1.num(), P.p1.den()}, {P.p2.num(), P.p2.den()}};
    for (auto& pq : polys) {
        const MPoly &p = pq[0], &q = pq[1];
        // Degrees preserved.
        if (p.is_zero()) continue;
        neq.push_back(params_only(p.lc(T), P));
        neq.push_back(params_only(q.lc(T), P));
        // Coprimality preserved.
        if (p.depends_on(T) || q.depends_on(T)) neq.push_back(param_condition(resultant(p, q, T), P));
    }
    // Tracing index stays one.
    const Var s = vars::s();
    const MPoly S = MPoly::var(s), Tt = MPoly::var(T);
    std::vector<MPoly> H;
    for (auto& pq : polys) {
        const MPoly &p = pq[0], &q = pq[1];
        MPoly h = p.substitute(T, S) * q - p * q.substitute(T, S);
        if (h.is_zero()) continue;
        auto quo = h.divide_exact(S - Tt);
        if (!quo) throw std::logic_error("tracing polynomial not divisible by s - t");
        H.push_back(*quo);
    }
    bool trivial = false;
    for (auto& h : H) {
        if (!h.depends_on(s)) {
            neq.push_back(param_condition(h, P));
            trivial = true;
        } else {
            neq.push_back(param_condition(h.lc(s), P));
        }
    }
    if (!trivial && H.size() == 2) neq.push_back(param_condition(resultant(H[0], H[1], s), P));
    return ConstructibleSet::open(neq);
}

ConstructibleSet omega_surj(const Parametrization& base, const CoveringData& cov) {
    std::vector<MPoly> neq;
    for (std::size_t i = 0; i < cov.parts.size(); ++i) {
        if (!cov.critical[i]) continue;
        const CurvePoint& C = *cov.critical[i];
        const Parametrization& Pk = cov.parts[static_cast<std::size_t>(cov.attained_by[i])];
        const RatFn* A[2] = {&C.y, &C.z};
        const RatFn* comp[2] = {&Pk.p1, &Pk.p2};
        MPoly g[2];
        for (int j = 0; j < 2; ++j) {
            neq.push_back(params_only(A[j]->den(), base));
            g[j] = A[j]->num() * comp[j]->den() - A[j]->den() * comp[j]->num();
            if (base.uses_delta()) g[j] = reduce_delta(RatFn(g[j]), base.radicand).num();
        }
        MPoly g0 = g[0].is_zero() ? g[1] : g[1].is_zero() ? g[0] : gcd(g[0], g[1]);
        if (!g[0].is_zero() && !g[1].is_zero()) {
            neq.push_back(param_condition(g[0].lc(T) * g[1].lc(T), base));
            neq.push_back(param_condition(cofactor_resultant(*g[0].divide_exact(g0), *g[1].divide_exact(g0), T), base));
        }
        MPoly poles = Pk.p1.den() * Pk.p2.den();
        neq.push_back(param_condition(cofactor_resultant(g0, poles, T), base));
    }
    return ConstructibleSet::open(neq);
}

bool membership(const std::map<Var, Rat>& point, const Component& c) {
    for (auto& e : c.eq)
        if (!e.evaluate(point).is_zero()) return false;
    for (auto& n : c.neq)
        if (n.evaluate(point).is_zero()) return false;
    return true;
}

bool membership(const std::map<Var, Rat>& point, const ConstructibleSet& S) {
    return std::any_of(S.components.begin(), S.components.end(), [&](const Component& c) { return membership(point, c); });
}

bool certified_irreducible(const MPoly& p) {
    for (auto v : p.variables()) {
        if (p.degree(v) != 1) continue;
        if (content(p, v).is_constant()) return true;
    }
    return false;
}

std::vector<Component> complement_components(const ConstructibleSet& S) {
    // Complement of a union is the intersection of the complements; each
    // component's complement is the union of {factor = 0}.
    std::vector<Component> acc{Component{}};
    for (auto& c : S.components) {
        if (!c.eq.empty()) throw std::invalid_argument("complement_components: open sets only");
        std::vector<Component> next;
        for (auto& partial : acc)
            for (auto& f : c.neq) {
                Component n = partial;
                n.eq.push_back(f);
                next.push_back(n);
            }
        acc = std::move(next);
    }
    std::vector<Component> out;
    for (auto& c : acc) {
        Component n = normalize(c);
        if (n.eq.size() == 1 && n.eq[0] == MPoly(1)) continue;
        n.coarse = !std::all_of(n.eq.begin(), n.eq.end(), certified_irreducible) || n.eq.size() > 1;
        if (n.eq.size() > 1) {
            // Several equations: irreducibility of the locus is not checked
            // unless each equation eliminates its own variable.
            std::set<std::uint32_t> used;
            bool independent = true;
            for (auto& e : n.eq) {
                auto vs = e.variables();
                if (vs.size() != 1 || e.degree(vs[0]) != 1 || !used.insert(vs[0].id()).second) independent = false;
            }
            n.coarse = !independent;
        }
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    }
    return out;
}

nlohmann::json to_json(const Component& c) {
    nlohmann::json j;
    j["eq"] = nlohmann::json::array();
    j["neq"] = nlohmann::json::array();
    for (auto& e : c.eq) j["eq"].push_back(render(e));
    for (auto& n : c.neq) j["neq"].push_back(render(n));
    j["coarse"] = c.coarse;
    return j;
}

nlohmann::json to_json(const ConstructibleSet& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& c : s.components) arr.push_back(to_json(c));
    return {{"components", arr}};
}

std::string describe(const Component& c) {
    if (c.eq.empty() && c.neq.empty()) return "all parameters";
    std::string out;
    for (auto& e : c.eq) out += (out.empty() ? "" : ", ") + render(e) + " = 0";
    for (auto& n : c.neq) out += (out.empty() ? "" : ", ") + render(n) + " != 0";
    return out;
}

} // namespace ratode
