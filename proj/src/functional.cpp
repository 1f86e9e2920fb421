#include "ratode/functional.hpp"

#include "ratode/polyalg.hpp"
#include "ratode/upoly.hpp"
#include "ratode/verify.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ratode {

namespace {

const Var T = vars::t();
const Var W = vars::w();

std::vector<Var> f_names(const std::vector<FunctionalRule>& rules) {
    std::vector<Var> out;
    for (auto& r : rules) out.push_back(r.name);
    return out;
}

RatFn at_w(const RatFn& r) { return r.substitute(T, RatFn::var(W)); }

std::optional<RatFn> sqrt_ratfn(const RatFn& r) {
    if (r.is_zero()) return RatFn();
    auto s = sqrt_exact(r.num() * r.den());
    if (!s) return std::nullopt;
    return RatFn::make(*s, r.den());
}

std::optional<Rat> as_constant(const RatFn& r) {
    if (!r.is_constant()) return std::nullopt;
    return r.constant_value();
}

MPoly shift_down(const MPoly& p, Var v, unsigned k) {
    auto cs = p.coeffs(v);
    cs.erase(cs.begin(), cs.begin() + std::min<std::size_t>(k, cs.size()));
    return MPoly::from_coeffs(cs, v);
}

// r = sum c[i] e^(val + i) around f = point (or f = infinity, e = 1/f).
struct Laurent {
    int val = 0;
    std::vector<RatFn> c;
    const RatFn& at(int power) const {
        static const RatFn zero;
        int i = power - val;
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<std::size_t>(i)] : zero;
    }
};

Laurent laurent(const RatFn& r, Var f, const std::optional<RatFn>& point, unsigned terms) {
    RatFn loc = point ? r.substitute(f, RatFn::var(f) + *point) : r.substitute(f, RatFn(1) / RatFn::var(f));
    MPoly n = loc.num(), d = loc.den();
    unsigned ln = n.low_degree(f), ld = d.low_degree(f);
    UPoly N = UPoly::from(shift_down(n, f, ln), f), D = UPoly::from(shift_down(d, f, ld), f);
    Laurent L;
    L.val = static_cast<int>(ln) - static_cast<int>(ld);
    RatFn inv = RatFn(1) / D.coeff(0);
    for (unsigned k = 0; k < terms; ++k) {
        RatFn s = N.coeff(static_cast<int>(k));
        for (unsigned j = 1; j <= k; ++j) s -= D.coeff(static_cast<int>(j)) * L.c[k - j];
        L.c.push_back(s * inv);
    }
    return L;
}

// Square root of a0 + a1 e + ... up to n terms, if a0 is a square.
std::optional<std::vector<RatFn>> series_sqrt(const std::vector<RatFn>& a, unsigned n) {
    auto s0 = sqrt_ratfn(a.at(0));
    if (!s0 || s0->is_zero()) return std::nullopt;
    std::vector<RatFn> s{*s0};
    RatFn inv = RatFn(1) / (RatFn(2) * *s0);
    for (unsigned k = 1; k < n; ++k) {
        RatFn acc = k < a.size() ? a[k] : RatFn();
        for (unsigned j = 1; j < k; ++j) acc -= s[j] * s[k - j];
        s.push_back(acc * inv);
    }
    return s;
}

RatFn riccati_residual(const RiccatiForm& R, const RatFn& w) {
    return w.derive(R.f) - R.g0 - R.g1 * w - R.g2 * w * w;
}

MPoly lcm(const MPoly& a, const MPoly& b) {
    MPoly g = gcd(a, b);
    return *(a * b).divide_exact(g);
}

// H with H'/H = g, or nullopt and a reason.
std::optional<RatFn> exp_integral(const RatFn& g, Var f, std::string& why) {
    if (g.is_zero()) return RatFn(1);
    const MPoly N = g.num(), D = g.den();
    if (!D.depends_on(f) || N.degree(f) >= D.degree(f)) {
        why = "no_rational_H: nonzero polynomial part";
        return std::nullopt;
    }
    const MPoly Dp = D.derive(f);
    if (gcd_poly(D, Dp, f).depends_on(f)) {
        why = "no_rational_H: pole of order greater than one";
        return std::nullopt;
    }
    const Var z = vars::k();
    MPoly R = resultant(D, N - MPoly::var(z) * Dp, f);
    R = primitive_part(R, z);
    std::vector<Rat> residues;
    for (auto& [factor, mult] : squarefree_decompose(R, z)) {
        (void)mult;
        if (factor.degree(z) == 1) {
            RatFn r = RatFn::make(-factor.coeff(z, 0), factor.coeff(z, 1));
            auto rc = as_constant(r);
            if (!rc) {
                why = "no_rational_H: residue " + render(r) + " depends on the parameters";
                return std::nullopt;
            }
            residues.push_back(*rc);
            continue;
        }
        auto vs = factor.variables();
        bool numeric = vs.size() == 1 && vs[0] == z;
        auto roots = numeric ? rational_roots(factor, z) : std::vector<Rat>{};
        if (roots.size() < factor.degree(z)) {
            why = "no_rational_H: residue not in the coefficient field";
            return std::nullopt;
        }
        residues.insert(residues.end(), roots.begin(), roots.end());
    }
    std::sort(residues.begin(), residues.end());
    for (auto& r : residues)
        if (!is_integer(r)) {
            why = "no_rational_H: non-integer residue " + to_string(r);
            return std::nullopt;
        }
    RatFn H(1);
    for (auto& r : residues) {
        if (r == 0) continue;
        MPoly q = N - MPoly(r) * Dp;
        MPoly g_r = q.is_zero() ? primitive_part(D, f) : gcd_poly(D, q, f);
        if (!g_r.depends_on(f)) continue;
        long e = r.get_num().get_si();
        H *= RatFn(g_r).pow(static_cast<int>(e));
    }
    if (!(H.derive(f) - g * H).is_zero()) {
        why = "no_rational_H: verification failed";
        return std::nullopt;
    }
    return H;
}

// Rational antiderivative in f, or nullopt when a logarithm is needed.
std::optional<RatFn> rational_integral(const RatFn& A, Var f) {
    if (A.is_zero()) return RatFn();
    UPoly num = UPoly::from(A.num(), f), den = UPoly::from(A.den(), f);
    auto [Q, Rm] = UPoly::divmod(num, den);
    RatFn out;
    for (int i = 0; i <= Q.degree(); ++i)
        out += Q.coeff(i) * RatFn(Rat(1, i + 1)) * RatFn(MPoly::var(f, static_cast<unsigned>(i + 1)));
    if (Rm.is_zero()) return out;
    // Hermite reduction, Mack's linear version.
    UPoly D = den.monic();
    UPoly a = RatFn(1) / den.lc() * Rm;
    UPoly Dm = UPoly::gcd(D, D.derive());
    UPoly Ds = UPoly::divmod(D, Dm).first;
    while (Dm.degree() > 0) {
        UPoly Dm2 = UPoly::gcd(Dm, Dm.derive());
        UPoly Dms = UPoly::divmod(Dm, Dm2).first;
        UPoly lhs = UPoly::divmod(RatFn(-1) * Ds * Dm.derive(), Dm).first;
        auto [B, C] = UPoly::ext_euclid(lhs, Dms, a);
        a = C - UPoly::divmod(B.derive() * Ds, Dms).first;
        out += B.to_ratfn() / Dm.to_ratfn();
        Dm = Dm2;
    }
    if (!a.is_zero()) return std::nullopt;
    if (!(out.derive(f) - A).is_zero()) throw std::logic_error("rational_integral: verification failed");
    return out;
}

struct LocalData {
    RatFn point;              // pole location (unused at infinity)
    int order = 0;
    std::vector<RatFn> sqrt_part;  // [sqrt r] as rational functions, one per sign (+, -)
    std::vector<RatFn> alpha;      // exponents, one per sign
};

// Kovacic exponents at a pole; nullopt if case 1 is impossible there.
std::optional<LocalData> pole_data(const RatFn& r, Var f, const RatFn& c, int m) {
    LocalData d;
    d.point = c;
    d.order = m;
    RatFn e = RatFn::var(f) - c;
    if (m == 1) {
        d.sqrt_part = {RatFn(), RatFn()};
        d.alpha = {RatFn(1), RatFn(1)};
        return d;
    }
    if (m % 2) return std::nullopt;
    Laurent L = laurent(r, f, c, static_cast<unsigned>(m + 2));
    if (m == 2) {
        auto sq = sqrt_ratfn(RatFn(1) + RatFn(4) * L.at(-2));
        if (!sq) return std::nullopt;
        d.sqrt_part = {RatFn(), RatFn()};
        d.alpha = {RatFn(Rat(1, 2)) + *sq / RatFn(2), RatFn(Rat(1, 2)) - *sq / RatFn(2)};
        return d;
    }
    const int nu = m / 2;
    auto s = series_sqrt(L.c, static_cast<unsigned>(nu - 1));
    if (!s) return std::nullopt;
    RatFn root;
    for (int i = 0; i <= nu - 2; ++i) root += (*s)[static_cast<std::size_t>(i)] * e.pow(i - nu);
    // Coefficient of e^(-nu-1) in r - root^2.
    RatFn b = L.at(-nu - 1);
    for (int i = 0; i <= nu - 2; ++i) {
        int j = nu - 1 - i;
        if (j >= 0 && j <= nu - 2) b -= (*s)[static_cast<std::size_t>(i)] * (*s)[static_cast<std::size_t>(j)];
    }
    RatFn ratio = b / (*s)[0];
    d.sqrt_part = {root, -root};
    d.alpha = {(ratio + RatFn(nu)) / RatFn(2), (-ratio + RatFn(nu)) / RatFn(2)};
    return d;
}

std::optional<LocalData> infinity_data(const RatFn& r, Var f) {
    LocalData d;
    const int v = static_cast<int>(r.den().degree(f)) - static_cast<int>(r.num().degree(f));
    d.order = v;
    if (v > 2) {
        d.sqrt_part = {RatFn(), RatFn()};
        d.alpha = {RatFn(0), RatFn(1)};
        return d;
    }
    if (v % 2) return std::nullopt;
    const int nu = -v / 2;
    Laurent L = laurent(r, f, std::nullopt, static_cast<unsigned>(nu + 3));
    if (v == 2) {
        auto sq = sqrt_ratfn(RatFn(1) + RatFn(4) * L.at(2));
        if (!sq) return std::nullopt;
        d.sqrt_part = {RatFn(), RatFn()};
        d.alpha = {RatFn(Rat(1, 2)) + *sq / RatFn(2), RatFn(Rat(1, 2)) - *sq / RatFn(2)};
        return d;
    }
    auto s = series_sqrt(L.c, static_cast<unsigned>(nu + 1));
    if (!s) return std::nullopt;
    RatFn root;
    for (int i = 0; i <= nu; ++i) root += (*s)[static_cast<std::size_t>(i)] * RatFn(MPoly::var(f, static_cast<unsigned>(nu - i)));
    // Coefficient of f^(nu-1) in r - root^2, i.e. index nu+1 of the series.
    RatFn b = L.c.at(static_cast<std::size_t>(nu + 1));
    for (int i = 0; i <= nu; ++i) {
        int j = nu + 1 - i;
        if (j >= 0 && j <= nu) b -= (*s)[static_cast<std::size_t>(i)] * (*s)[static_cast<std::size_t>(j)];
    }
    RatFn ratio = b / (*s)[0];
    d.sqrt_part = {root, -root};
    d.alpha = {(ratio - RatFn(nu)) / RatFn(2), (-ratio - RatFn(nu)) / RatFn(2)};
    return d;
}

// Monic P of degree d with P'' + 2 theta P' + (theta' + theta^2 - r) P = 0.
std::optional<RatFn> polynomial_completion(const RatFn& theta, const RatFn& r, Var f, unsigned d) {
    const RatFn K = theta.derive(f) + theta * theta - r;
    const RatFn X = RatFn::var(f);
    std::vector<RatFn> E;
    for (unsigned i = 0; i <= d; ++i) {
        RatFn fi = X.pow(static_cast<int>(i));
        RatFn e = K * fi;
        if (i >= 1) e += RatFn(2 * static_cast<long>(i)) * theta * X.pow(static_cast<int>(i) - 1);
        if (i >= 2) e += RatFn(static_cast<long>(i * (i - 1))) * X.pow(static_cast<int>(i) - 2);
        E.push_back(e);
    }
    MPoly M(1);
    for (auto& e : E) M = lcm(M, e.den());
    std::vector<UPoly> U;
    for (auto& e : E) U.push_back(UPoly::from(e * RatFn(M), f));
    int rows = 0;
    for (auto& u : U) rows = std::max(rows, u.degree() + 1);
    std::vector<std::vector<RatFn>> A(static_cast<std::size_t>(rows));
    std::vector<RatFn> b(static_cast<std::size_t>(rows));
    for (int j = 0; j < rows; ++j) {
        for (unsigned i = 0; i < d; ++i) A[static_cast<std::size_t>(j)].push_back(U[i].coeff(j));
        b[static_cast<std::size_t>(j)] = -U[d].coeff(j);
    }
    RatFn P = X.pow(static_cast<int>(d));
    if (d > 0) {
        auto sol = solve_linear(A, b);
        if (!sol) return std::nullopt;
        for (unsigned i = 0; i < d; ++i) P += sol->particular[i] * X.pow(static_cast<int>(i));
    } else {
        for (auto& x : b)
            if (!x.is_zero()) return std::nullopt;
    }
    return P;
}

std::vector<MPoly> monomials_upto(const std::vector<Var>& vs, unsigned degree) {
    std::vector<MPoly> out;
    std::function<void(std::size_t, unsigned, MPoly)> rec = [&](std::size_t i, unsigned left, MPoly m) {
        if (i == vs.size()) {
            out.push_back(m);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) rec(i + 1, left - e, m * MPoly::var(vs[i], e));
    };
    rec(0, degree, MPoly(1));
    std::sort(out.begin(), out.end(), [](const MPoly& a, const MPoly& b) {
        return grevlex_compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    return out;
}

// Polynomial in the non-f variables times f-monomial, grouped by the f-part.
std::vector<std::pair<Monomial, MPoly>> split_by(const MPoly& p, const std::set<Var>& fs) {
    std::vector<std::pair<Monomial, MPoly>> out;
    for (auto& term : p.terms()) {
        Monomial fm, rest;
        for (auto& [id, e] : term.m.entries()) {
            Var v = Var::from_id(id);
            if (fs.count(v)) fm = fm * Monomial::of(v, e);
            else rest = rest * Monomial::of(v, e);
        }
        auto it = std::find_if(out.begin(), out.end(), [&](auto& kv) { return kv.first == fm; });
        MPoly piece = MPoly::monomial(rest, term.c);
        if (it == out.end()) out.push_back({fm, piece});
        else it->second += piece;
    }
    return out;
}

// Factors of the denominators that involve only the constant parameters.
void collect_nonzero(const RatFn& r, const std::set<Var>& consts, std::vector<MPoly>& out) {
    MPoly d = r.den();
    for (auto v : d.variables())
        if (!consts.count(v)) d = content(d, v);
    if (d.is_constant()) return;
    d = normalize_unit(d);
    if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
}

std::optional<RatFn> lift(const Parametrization& P, const RatFn& w) {
    try {
        return reduce_for(P, P.p1.substitute(T, w));
    } catch (const NotDefined&) {
        return std::nullopt;
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

std::optional<Parametrization> choose_parametrization(const ProblemSpec& spec, FunctionalResult& res) {
    for (auto& up : spec.user_parametrizations) {
        Parametrization Q{up.p1, up.p2, RatFn()};
        if (!Q.p1.depends_on(T) && !Q.p2.depends_on(T)) continue;
        if (!verify_parametrization(spec.F, Q) || tracing_index(Q) != 1) continue;
        res.parametrization_source = "user (line " + std::to_string(up.line) + ")";
        return Q;
    }
    try {
        auto r = parametrize_special(spec.F);
        if (auto* p = std::get_if<Parametrization>(&r)) {
            res.parametrization_source = "computed";
            return *p;
        }
        res.reason = "no rational parametrization found: " + std::get<Unsupported>(r).reason;
    } catch (const ReducibleCurve& e) {
        res.reason = std::string("no rational parametrization found: ") + e.what();
    }
    return std::nullopt;
}

} // namespace

Var derivative_symbol(const std::vector<FunctionalRule>& rules, std::size_t i) {
    if (rules.size() == 1) return vars::wp();
    return Var::named("w_" + rules.at(i).name.name());
}

AssocODE associated_ode(const Parametrization& P, const std::vector<FunctionalRule>& rules) {
    if (rules.empty()) throw std::invalid_argument("associated_ode: no functional coefficient");
    const RatFn dt = P.p1.derive(T);
    RatFn sum = -P.p2;
    for (std::size_t i = 0; i < rules.size(); ++i)
        sum += (P.p1.derive(rules[i].name) + dt * RatFn::var(derivative_symbol(rules, i))) * rules[i].q;
    sum = at_w(sum);
    if (P.uses_delta()) sum = reduce_delta(sum, P.radicand);
    AssocODE G;
    G.G = normalize_unit(sum.num());
    G.rules = rules;
    G.single_coefficient = rules.size() == 1;
    return G;
}

CharacteristicSystem characteristic_system(const Parametrization& P, const std::vector<FunctionalRule>& rules) {
    CharacteristicSystem S;
    const RatFn dt = P.p1.derive(T);
    RatFn dw = P.p2;
    for (auto& r : rules) {
        S.equations.push_back({r.name, at_w(dt * r.q)});
        dw -= P.p1.derive(r.name) * r.q;
    }
    S.equations.push_back({W, at_w(dw)});
    return S;
}

std::optional<RiccatiForm> riccati_form(const AssocODE& A) {
    if (!A.single_coefficient) throw std::invalid_argument("riccati_form: more than one functional coefficient");
    const Var wp = vars::wp();
    if (!A.G.depends_on(wp)) throw std::invalid_argument("riccati_form: the equation does not involve w'");
    if (A.G.degree(wp) > 1) return std::nullopt;
    MPoly G1 = A.G.coeff(wp, 1), G0 = A.G.coeff(wp, 0);
    MPoly h = gcd(G1, G0);
    if (!h.is_constant()) {
        G1 = *G1.divide_exact(h);
        G0 = *G0.divide_exact(h);
    } else {
        h = MPoly(1);
    }
    RatFn rhs = RatFn::make(-G0, G1);
    if (rhs.den().depends_on(W) || rhs.num().degree(W) > 2) return std::nullopt;
    RiccatiForm R;
    R.f = A.rules[0].name;
    R.g0 = RatFn::make(rhs.num().coeff(W, 0), rhs.den());
    R.g1 = RatFn::make(rhs.num().coeff(W, 1), rhs.den());
    R.g2 = RatFn::make(rhs.num().coeff(W, 2), rhs.den());
    R.removed = h;
    return R;
}

LinearOutcome linear_general_rational(const RatFn& g0, const RatFn& g1, Var f) {
    LinearOutcome out;
    auto H = exp_integral(g1, f, out.reason);
    if (!H) return out;
    auto I = rational_integral(g0 / *H, f);
    if (!I) {
        out.reason = "no_rational_particular: the integral of g0/H needs a logarithm";
        return out;
    }
    LinearGeneral L{*H, *H * *I};
    if (!(L.vp.derive(f) - g1 * L.vp - g0).is_zero()) throw std::logic_error("linear_general_rational: vp check failed");
    out.solution = L;
    return out;
}

std::vector<RatFn> riccati_particular_rational(const RiccatiForm& R, const KovacicOptions& opt) {
    if (R.g2.is_zero()) throw std::invalid_argument("riccati_particular_rational: g2 is zero");
    const Var f = R.f;
    const RatFn a = -(R.g1 + R.g2.derive(f) / R.g2);
    const RatFn b = R.g0 * R.g2;
    const RatFn r = a * a / RatFn(4) + a.derive(f) / RatFn(2) - b;
    std::vector<RatFn> found;
    auto accept = [&](const RatFn& logder) {
        // logder = v'/v; u'/u = logder - a/2; w = -(u'/u)/g2.
        RatFn w = -(logder - a / RatFn(2)) / R.g2;
        if (!riccati_residual(R, w).is_zero()) return;
        if (std::find(found.begin(), found.end(), w) == found.end()) found.push_back(w);
    };
    if (r.is_zero()) {
        accept(RatFn());
        accept(RatFn(1) / RatFn::var(f));
        return found;
    }
    std::vector<LocalData> poles;
    if (r.den().depends_on(f)) {
        auto split = split_linear_quadratic(r.den(), f);
        if (!split.quadratic.empty() || split.residual.depends_on(f))
            throw UnsupportedInput("pole of the Riccati equation outside the coefficient field");
        for (auto& [lin, mult] : split.linear) {
            RatFn c = RatFn::make(-lin.coeff(f, 0), lin.coeff(f, 1));
            auto d = pole_data(r, f, c, static_cast<int>(mult));
            if (!d) return found;
            poles.push_back(*d);
        }
    }
    auto inf = infinity_data(r, f);
    if (!inf) return found;
    const std::size_t n = poles.size();
    for (std::size_t sinf = 0; sinf < 2; ++sinf) {
        for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
            RatFn dd = inf->alpha[sinf];
            RatFn theta = inf->sqrt_part[sinf];
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t s = (mask >> i) & 1;
                dd -= poles[i].alpha[s];
                theta += poles[i].sqrt_part[s] + poles[i].alpha[s] / (RatFn::var(f) - poles[i].point);
            }
            auto dc = as_constant(dd);
            if (!dc || !is_integer(*dc) || *dc < 0 || *dc > opt.degree_cap) continue;
            auto P = polynomial_completion(theta, r, f, static_cast<unsigned>(dc->get_num().get_ui()));
            if (!P) continue;
            accept(theta + P->derive(f) / *P);
            if (found.size() >= opt.max_solutions) return found;
        }
    }
    return found;
}

RiccatiGeneral riccati_general_rational(const RiccatiForm& R, const KovacicOptions& opt) {
    RiccatiGeneral out;
    const RatFn c = RatFn::var(vars::c());
    if (R.is_linear()) {
        auto L = linear_general_rational(R.g0, R.g1, R.f);
        if (!L.solution) {
            out.reason = L.reason;
            return out;
        }
        out.linear = L.solution;
        out.w = c * L.solution->H + L.solution->vp;
    } else {
        out.particular = riccati_particular_rational(R, opt);
        if (out.particular.empty()) {
            out.reason = "no_rational_particular: the Riccati equation has no rational solution";
            return out;
        }
        for (auto& w1 : out.particular) {
            auto L = linear_general_rational(-R.g2, -(R.g1 + RatFn(2) * R.g2 * w1), R.f);
            if (!L.solution) {
                out.reason = L.reason;
                continue;
            }
            out.w1 = w1;
            out.linear = L.solution;
            out.w = w1 + RatFn(1) / (c * L.solution->H + L.solution->vp);
            out.reason.clear();
            break;
        }
        if (!out.w) return out;
    }
    if (!riccati_residual(R, *out.w).is_zero()) throw std::logic_error("riccati_general_rational: check failed");
    return out;
}

std::vector<ConstantW> constant_w_solutions(const AssocODE& A) {
    MPoly g = A.G;
    for (std::size_t i = 0; i < A.rules.size(); ++i) g = g.evaluate(derivative_symbol(A.rules, i), Rat(0));
    for (auto& r : A.rules)
        if (g.depends_on(r.name)) g = content(g, r.name);
    std::vector<ConstantW> out;
    if (g.is_zero() || !g.depends_on(W)) return out;
    auto split = split_linear_quadratic(g, W);
    for (auto& [lin, mult] : split.linear) {
        (void)mult;
        out.push_back({RatFn::make(-lin.coeff(W, 0), lin.coeff(W, 1)), RatFn()});
    }
    for (auto& [q, mult] : split.quadratic) {
        (void)mult;
        RatFn qa(q.coeff(W, 2)), qb(q.coeff(W, 1)), qc(q.coeff(W, 0));
        RatFn disc = qb * qb - RatFn(4) * qa * qc;
        RatFn d = RatFn::var(vars::delta());
        out.push_back({(-qb + d) / (RatFn(2) * qa), disc});
        out.push_back({(-qb - d) / (RatFn(2) * qa), disc});
    }
    std::stable_sort(out.begin(), out.end(), [](const ConstantW& x, const ConstantW& y) {
        bool cx = x.value.is_constant(), cy = y.value.is_constant();
        if (cx && cy) return x.value.constant_value() < y.value.constant_value();
        if (cx != cy) return cx;
        return render(x.value) < render(y.value);
    });
    return out;
}

std::string_view functional_status_name(FunctionalStatus s) {
    switch (s) {
    case FunctionalStatus::Srgs: return "srgs";
    case FunctionalStatus::NoSrgs: return "no_srgs";
    case FunctionalStatus::Unsupported: return "unsupported";
    case FunctionalStatus::Undecided: return "undecided";
    }
    return "?";
}

FunctionalResult functional_coefficient_solve(const ProblemSpec& spec, const FunctionalOptions& opt) {
    if (!spec.has_functional()) throw std::invalid_argument("no functional coefficient declared");
    FunctionalResult res;
    res.meanings = spec.meanings;
    auto P = choose_parametrization(spec, res);
    if (!P) {
        res.status = FunctionalStatus::Unsupported;
        return res;
    }
    res.parametrization = P;
    for (auto& r : spec.functional_params)
        if (P->radicand.depends_on(r.name)) {
            res.status = FunctionalStatus::Unsupported;
            res.reason = "parametrization needs a square root involving " + r.name.name();
            return res;
        }
    const std::set<Var> consts(spec.constant_params.begin(), spec.constant_params.end());
    collect_nonzero(P->p1, consts, res.nonzero);
    collect_nonzero(P->p2, consts, res.nonzero);
    if (spec.functional_params.size() > 1) {
        FunctionalResult multi = functional_ansatz_solve(spec, *P, opt.ansatz_degree);
        multi.parametrization_source = res.parametrization_source;
        multi.nonzero = res.nonzero;
        return multi;
    }
    res.assoc = associated_ode(*P, spec.functional_params);
    const auto& rules = spec.functional_params;
    std::optional<RiccatiForm> R;
    try {
        R = riccati_form(*res.assoc);
    } catch (const std::invalid_argument& e) {
        res.status = FunctionalStatus::Unsupported;
        res.reason = e.what();
        return res;
    }
    std::vector<RatFn> riccati_particular;
    if (!R) {
        res.status = FunctionalStatus::NoSrgs;
        res.reason = "not_riccati";
    } else {
        res.riccati = R;
        for (auto* g : {&R->g0, &R->g1, &R->g2}) collect_nonzero(*g, consts, res.nonzero);
        try {
            auto gen = riccati_general_rational(*R, opt.kovacic);
            riccati_particular = gen.particular;
            res.w1 = gen.w1;
            res.linear = gen.linear;
            if (gen.w) {
                res.w = gen.w;
                res.y = lift(*P, *gen.w);
                if (!res.y) throw std::logic_error("lift of the general solution is undefined");
                res.certified = verify_solution(spec.F, *res.y, rules, P->radicand).exact_zero;
                res.status = res.certified ? FunctionalStatus::Srgs : FunctionalStatus::Undecided;
                if (!res.certified) res.reason = "lift failed certification";
                return res;
            }
            res.status = FunctionalStatus::NoSrgs;
            res.reason = gen.reason;
        } catch (const UnsupportedInput& e) {
            res.status = FunctionalStatus::Unsupported;
            res.reason = e.what();
        }
    }
    auto add_particular = [&](const RatFn& w, const RatFn& radicand, const std::string& origin) {
        auto y = lift(*P, w);
        if (!y) return;
        RatFn rad = radicand.is_zero() ? P->radicand : radicand;
        if (!rad.is_zero()) y = reduce_delta(*y, rad);
        bool ok = verify_solution(spec.F, *y, rules, rad).exact_zero;
        if (!ok) return;
        for (auto& p : res.particular)
            if (p.y == *y) return;
        res.particular.push_back({w, *y, origin, true});
    };
    for (auto& k : constant_w_solutions(*res.assoc)) add_particular(k.value, k.radicand, "constant_w");
    for (auto& w : riccati_particular) add_particular(w, RatFn(), "riccati");
    return res;
}

FunctionalResult functional_ansatz_solve(const ProblemSpec& spec, const Parametrization& P, unsigned degree) {
    FunctionalResult res;
    res.meanings = spec.meanings;
    res.parametrization = P;
    const auto& rules = spec.functional_params;
    res.assoc = associated_ode(P, rules);
    const MPoly& G = res.assoc->G;
    std::vector<Var> unknowns{W};
    for (std::size_t i = 0; i < rules.size(); ++i) unknowns.push_back(derivative_symbol(rules, i));
    for (auto& t : G.terms()) {
        unsigned d = 0;
        for (auto v : unknowns) d += t.m.degree(v);
        if (d > 1) {
            res.status = FunctionalStatus::Undecided;
            res.reason = "associated system is not linear in w; no solver for several coefficients";
            return res;
        }
    }
    std::map<Var, MPoly> zero;
    for (auto v : unknowns) zero[v] = MPoly();
    const MPoly G0 = G.substitute(zero);
    const MPoly Gh = G - G0;
    const auto fs = f_names(rules);
    const std::set<Var> fset(fs.begin(), fs.end());
    const auto basis = monomials_upto(fs, degree);
    std::vector<std::vector<std::pair<Monomial, MPoly>>> cols;
    std::vector<Monomial> keys;
    auto note_keys = [&](const std::vector<std::pair<Monomial, MPoly>>& parts) {
        for (auto& [m, c] : parts)
            if (std::find(keys.begin(), keys.end(), m) == keys.end()) keys.push_back(m);
    };
    for (auto& m : basis) {
        std::map<Var, MPoly> s{{W, m}};
        for (std::size_t i = 0; i < rules.size(); ++i) s[derivative_symbol(rules, i)] = m.derive(rules[i].name);
        cols.push_back(split_by(Gh.substitute(s), fset));
        note_keys(cols.back());
    }
    const auto rhs_parts = split_by(G0, fset);
    note_keys(rhs_parts);
    auto lookup = [](const std::vector<std::pair<Monomial, MPoly>>& parts, const Monomial& k) {
        for (auto& [m, c] : parts)
            if (m == k) return RatFn(c);
        return RatFn();
    };
    std::vector<std::vector<RatFn>> A;
    std::vector<RatFn> b;
    for (auto& k : keys) {
        std::vector<RatFn> row;
        for (auto& col : cols) row.push_back(lookup(col, k));
        A.push_back(row);
        b.push_back(-lookup(rhs_parts, k));
    }
    auto sol = solve_linear(A, b);
    if (!sol) {
        res.status = FunctionalStatus::NoSrgs;
        res.reason = "ansatz: no polynomial solution of total degree <= " + std::to_string(degree);
        return res;
    }
    RatFn wp;
    for (std::size_t i = 0; i < basis.size(); ++i) wp += sol->particular[i] * RatFn(basis[i]);
    auto certify = [&](const RatFn& w) -> std::optional<RatFn> {
        auto y = lift(P, w);
        if (!y) return std::nullopt;
        if (!verify_solution(spec.F, *y, rules, P.radicand).exact_zero) return std::nullopt;
        return y;
    };
    if (sol->nullspace.empty()) {
        res.status = FunctionalStatus::NoSrgs;
        res.reason = "ansatz: unique polynomial solution, no free constant";
        if (auto y = certify(wp)) res.particular.push_back({wp, *y, "ansatz", true});
        return res;
    }
    RatFn hom;
    for (std::size_t i = 0; i < basis.size(); ++i) hom += sol->nullspace[0][i] * RatFn(basis[i]);
    RatFn w = wp + RatFn::var(vars::c()) * hom;
    res.w = w;
    res.y = certify(w);
    res.certified = res.y.has_value();
    res.status = res.certified ? FunctionalStatus::Srgs : FunctionalStatus::Undecided;
    res.reason = "heuristic: polynomial ansatz of total degree <= " + std::to_string(degree);
    if (sol->nullspace.size() > 1)
        res.reason += ", solution space of dimension " + std::to_string(sol->nullspace.size()) + ", first direction used";
    return res;
}

MPoly eliminate_functional(const MPoly& F, const MPoly& relation, Var name) {
    if (!relation.depends_on(name)) throw std::invalid_argument("eliminate_functional: relation does not involve the name");
    if (!F.depends_on(name)) return F;
    return normalize_unit(resultant(F, relation, name));
}

std::string render_with_meanings(const RatFn& r, const std::map<std::string, std::string>& meanings) {
    std::map<Var, RatFn> s;
    for (auto& [name, meaning] : meanings) {
        auto v = Var::find(name);
        if (v && r.depends_on(*v)) s[*v] = RatFn::var(Var::named(meaning));
    }
    return render(s.empty() ? r : r.substitute(s));
}

nlohmann::json to_json(const FunctionalResult& r) {
    nlohmann::json j;
    j["status"] = std::string(functional_status_name(r.status));
    if (r.parametrization) {
        j["parametrization"] = render_pair(r.parametrization->p1, r.parametrization->p2);
        if (r.parametrization->uses_delta()) j["radicand"] = render(r.parametrization->radicand);
        j["parametrization_source"] = r.parametrization_source;
    }
    if (r.assoc) j["associated"] = render(r.assoc->G);
    if (r.riccati)
        j["riccati"] = {{"g0", render(r.riccati->g0)}, {"g1", render(r.riccati->g1)}, {"g2", render(r.riccati->g2)}};
    if (r.w) j["w"] = render(*r.w);
    if (r.y) {
        j["y"] = render_with_meanings(*r.y, r.meanings);
        j["y_f"] = render(*r.y);
        j["certified"] = r.certified;
    }
    if (r.w1) j["w1"] = render(*r.w1);
    if (r.linear) j["linear"] = {{"H", render(r.linear->H)}, {"vp", render(r.linear->vp)}};
    nlohmann::json parts = nlohmann::json::array(), details = nlohmann::json::array();
    for (auto& p : r.particular) {
        parts.push_back(render(p.y));
        details.push_back({{"w", render(p.w)},
                           {"y", render(p.y)},
                           {"y_meaning", render_with_meanings(p.y, r.meanings)},
                           {"origin", p.origin},
                           {"certified", p.certified}});
    }
    j["particular"] = parts;
    if (!details.empty()) j["particular_details"] = details;
    if (!r.nonzero.empty()) {
        nlohmann::json nz = nlohmann::json::array();
        for (auto& p : r.nonzero) nz.push_back(render(p));
        j["assumes_nonzero"] = nz;
    }
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

nlohmann::json to_json(const CharacteristicSystem& s) {
    nlohmann::json eqs = nlohmann::json::array();
    for (auto& [v, rhs] : s.equations) eqs.push_back({{"var", v.name()}, {"rhs", render(rhs)}});
    return {{"equations", eqs}};
}

} // namespace ratode
