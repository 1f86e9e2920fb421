#include "ratode/autonomous.hpp"

#include "ratode/polyalg.hpp"

#include <algorithm>
#include <set>

namespace ratode {

namespace {

const Var T = vars::t();

MPoly strip_delta(const MPoly& p, const RatFn& radicand) {
    if (radicand.is_zero() || !p.depends_on(vars::delta())) return p;
    return QuadExtScalar::from_ratfn(RatFn(p), radicand).norm().num();
}

// A polynomial in the parameters whose nonvanishing keeps p nonzero: the
// simplest coefficient with respect to every other variable, then its norm.
MPoly param_nonzero(MPoly p, const std::set<Var>& params, const RatFn& radicand) {
    if (!radicand.is_zero()) p = reduce_delta(RatFn(p), radicand).num();
    for (auto v : p.variables())
        if (!params.count(v) && v != vars::delta()) p = simplest_coefficient(p, v);
    return strip_delta(p, radicand);
}

void add_guard(std::vector<MPoly>& g, const MPoly& p) {
    if (p.is_zero()) throw std::logic_error("guard polynomial vanishes identically");
    if (!p.is_constant()) g.push_back(p);
}

void add_guards(std::vector<MPoly>& g, const ConstructibleSet& s) {
    if (s.is_empty()) throw std::logic_error("guard set is empty");
    for (auto& p : s.single().neq) add_guard(g, p);
}

// Coefficients of F in front of the nonconstant monomials in y, y'.
std::vector<MPoly> yz_coefficients(const MPoly& F) {
    std::vector<MPoly> out;
    for (unsigned i = 0; i <= F.degree(vars::y()); ++i) {
        MPoly ci = F.coeff(vars::y(), i);
        for (unsigned j = 0; j <= ci.degree(vars::z()); ++j)
            if ((i || j) && !ci.coeff(vars::z(), j).is_zero()) out.push_back(ci.coeff(vars::z(), j));
    }
    return out;
}

MPoly param_content(const MPoly& F) {
    MPoly c = F;
    for (Var v : {vars::y(), vars::z()})
        if (c.depends_on(v)) c = content(c, v);
    return normalize_unit(c);
}

// A polynomial whose nonvanishing keeps G nonconstant in (y, y').
MPoly stays_nonconstant(const MPoly& G) {
    MPoly best;
    for (auto& c : yz_coefficients(G))
        if (best.is_zero() || c.size() < best.size() || (c.size() == best.size() && c.total_degree() < best.total_degree()))
            best = c;
    return best;
}

struct Reducible {
    std::string reason;
    std::vector<MPoly> neq;
};

// Structural reducibility together with conditions under which the
// factorization survives specialization.
std::optional<Reducible> reducible_guard(const MPoly& F) {
    const Var y = vars::y(), z = vars::z();
    auto why = reducibility_evidence(F);
    if (!why) return std::nullopt;
    Reducible r{*why, {}};
    if (!F.depends_on(y) || !F.depends_on(z)) {
        Var v = F.depends_on(y) ? y : z;
        r.neq.push_back(F.lc(v));
        return r;
    }
    for (Var v : {y, z}) {
        MPoly c = content(F, v);
        if (c.depends_on(y) || c.depends_on(z)) {
            r.neq.push_back(stays_nonconstant(c));
            r.neq.push_back(stays_nonconstant(*F.divide_exact(c)));
            return r;
        }
    }
    for (Var v : {z, y})
        for (auto& f : squarefree_decompose(F, v))
            if (f.multiplicity > 1) {
                r.neq.push_back(stays_nonconstant(f.factor));
                return r;
            }
    return r;
}

RatFn family_argument(const FGClassification& cls) {
    RatFn u = RatFn(MPoly::var(vars::x()) + MPoly::var(vars::c()));
    if (cls.kind == FGCase::Direct) return cls.alpha * u;
    return cls.beta - RatFn(1) / (cls.alpha * u);
}

struct Ctx {
    std::map<Var, MPoly> subst;
    std::vector<MPoly> eqs, neqs;
};

enum class Mode { Solve, Parametrize };

class Engine {
public:
    Engine(const ProblemSpec& spec, const SolveOptions& opt, Mode mode) : spec_(spec), opt_(opt), mode_(mode) {
        for (auto v : spec.constant_params) order_.push_back(v);
    }

    ConstructibleSet ps1() const {
        std::vector<MPoly> eqs;
        for (auto& c : yz_coefficients(spec_.F)) {
            if (c.is_constant()) return ConstructibleSet::empty();
            eqs.push_back(c);
        }
        Component comp{eqs, {}, false};
        comp = normalize(comp);
        if (comp.eq.size() == 1 && comp.eq[0] == MPoly(1)) return ConstructibleSet::empty();
        comp.coarse = !locus_certified(comp.eq);
        return ConstructibleSet{{comp}};
    }

    void run(const Ctx& ctx) {
        const MPoly Fs = spec_.F.substitute(ctx.subst);
        if (!Fs.depends_on(vars::y()) && !Fs.depends_on(vars::z())) return;  // inside PS1
        const MPoly pc = param_content(Fs);
        const MPoly Fp = *Fs.divide_exact(pc);

        if (auto red = reducible_guard(Fp)) {
            ComponentReport r = base_report(ctx);
            r.status = ComponentStatus::Reducible;
            r.reason = red->reason;
            finish(ctx, r, red->neq, pc);
            return;
        }

        std::optional<Parametrization> P;
        std::string source, unsupported;
        for (auto& up : spec_.user_parametrizations) {
            auto cand = user_candidate(up, ctx);
            if (cand && verify_parametrization(Fp, *cand) && proper(*cand)) {
                P = cand;
                source = "user:" + std::to_string(up.line);
                break;
            }
        }
        if (!P && opt_.use_special) {
            try {
                auto got = parametrize_special(Fp);
                if (auto* p = std::get_if<Parametrization>(&got)) {
                    P = *p;
                    source = "special";
                } else {
                    unsupported = std::get<Unsupported>(got).reason;
                }
            } catch (const ReducibleCurve& e) {
                unsupported = std::string("reducible curve without guarded factors: ") + e.what();
            }
        }
        if (!P) {
            ComponentReport r = base_report(ctx);
            r.status = ComponentStatus::Undecided;
            r.reason = unsupported.empty() ? "no parametrization" : unsupported;
            r.component = normalize(Component{ctx.eqs, ctx.neqs, false});
            undecided_.push_back(r);
            return;
        }

        std::vector<MPoly> G;
        add_guards(G, omega_proper(*P));
        if (P->uses_delta()) {
            add_guard(G, P->radicand.num());
            add_guard(G, P->radicand.den());
        }
        ComponentReport r = base_report(ctx);
        r.parametrization = *P;
        r.source = source;

        if (mode_ == Mode::Parametrize) {
            r.status = ComponentStatus::Parametrized;
            if (opt_.surjective) {
                try {
                    r.covering = surjective_covering(*P);
                    add_guards(G, omega_surj(*P, *r.covering));
                } catch (const std::invalid_argument& e) {
                    r.covering.reset();
                    r.reason = std::string("no surjective covering: ") + e.what();
                }
            }
            finish(ctx, r, G, pc);
            return;
        }

        if (!P->p1.depends_on(T)) {
            // Vertical line y = y0: only the constant solution.
            r.status = ComponentStatus::ConstantOnly;
            r.reason = "vertical line";
            finish(ctx, r, G, pc);
            return;
        }
        FGClassification cls = feng_gao_check(*P);
        r.fg = cls;
        switch (cls.kind) {
        case FGCase::Direct:
        case FGCase::Moebius: {
            SolutionFamily fam = solution_from_fg(Fp, *P, cls);
            add_guard(G, param_nonzero(cls.alpha.num(), params(), P->radicand));
            add_guard(G, param_nonzero(cls.alpha.den(), params(), P->radicand));
            if (cls.kind == FGCase::Moebius) add_guard(G, param_nonzero(cls.beta.den(), params(), P->radicand));
            add_guard(G, param_nonzero(fam.closed_form.den(), params(), P->radicand));
            r.status = ComponentStatus::Solved;
            r.family = fam;
            break;
        }
        case FGCase::ConstantOnly:
            r.status = ComponentStatus::ConstantOnly;
            r.family = solution_from_fg(Fp, *P, cls);
            r.reason = "P2 vanishes: constant solutions only";
            break;
        case FGCase::None:
            add_guards(G, omega_fg(*P, cls));
            r.status = ComponentStatus::NoSolution;
            r.reason = "Feng-Gao condition fails";
            break;
        }
        finish(ctx, r, G, pc);
    }

    std::vector<ComponentReport> ps2_, ps3_, undecided_;

private:
    const ProblemSpec& spec_;
    SolveOptions opt_;
    Mode mode_;
    std::vector<Var> order_;

    std::set<Var> params() const { return {order_.begin(), order_.end()}; }

    static bool locus_certified(const std::vector<MPoly>& eqs) {
        if (eqs.size() == 1) return certified_irreducible(eqs[0]);
        std::set<std::uint32_t> used;
        for (auto& e : eqs) {
            auto vs = e.variables();
            if (vs.size() != 1 || e.degree(vs[0]) != 1 || !used.insert(vs[0].id()).second) return false;
        }
        return true;
    }

    ComponentReport base_report(const Ctx& ctx) const {
        ComponentReport r;
        r.substitution = ctx.subst;
        return r;
    }

    bool proper(const Parametrization& P) const {
        if (!P.p1.depends_on(T) && !P.p2.depends_on(T)) return false;
        return tracing_index(P) == 1;
    }

    std::optional<Parametrization> user_candidate(const UserParametrization& up, const Ctx& ctx) const {
        std::map<Var, RatFn> s;
        for (auto& [v, e] : ctx.subst) s[v] = RatFn(e);
        auto a = specialize(up.p1, s), b = specialize(up.p2, s);
        if (!a || !b) return std::nullopt;
        return Parametrization{*a, *b, RatFn()};
    }

    void finish(const Ctx& ctx, ComponentReport r, const std::vector<MPoly>& guards, const MPoly& pc) {
        std::vector<MPoly> neq = ctx.neqs;
        neq.insert(neq.end(), guards.begin(), guards.end());
        r.component = normalize(Component{ctx.eqs, neq, false});
        if (r.component.eq.size() == 1 && r.component.eq[0] == MPoly(1)) return;  // empty
        if (r.status == ComponentStatus::Solved && mode_ == Mode::Solve) r.family->guard = ConstructibleSet{{r.component}};
        if (r.status == ComponentStatus::Solved || r.status == ComponentStatus::Parametrized) ps3_.push_back(r);
        else ps2_.push_back(r);
        children(ctx, guards, pc);
    }

    void children(const Ctx& ctx, const std::vector<MPoly>& guards, const MPoly& pc) {
        std::vector<MPoly> factors;
        for (auto& g : guards)
            for (auto& f : split_factors(g)) factors.push_back(f);
        std::sort(factors.begin(), factors.end(), [](const MPoly& a, const MPoly& b) {
            if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
            if (a.size() != b.size()) return a.size() < b.size();
            return render(a) < render(b);
        });
        factors.erase(std::unique(factors.begin(), factors.end()), factors.end());

        for (std::size_t i = 0; i < factors.size(); ++i) {
            const MPoly& f = factors[i];
            if (!pc.is_constant() && pc.divide_exact(f)) continue;  // F vanishes there
            Ctx child = ctx;
            child.eqs.push_back(f);
            for (std::size_t j = 0; j < i; ++j) child.neqs.push_back(factors[j]);

            std::optional<Var> pick;
            for (auto v : order_) {
                if (child.subst.count(v) || f.degree(v) != 1 || !f.coeff(v, 1).is_constant()) continue;
                pick = v;  // the last admissible parameter wins
            }
            if (!pick) {
                ComponentReport r = base_report(ctx);
                r.status = ComponentStatus::Undecided;
                r.reason = "component is not reachable by a linear substitution";
                r.component = normalize(Component{child.eqs, child.neqs, true});
                r.component.coarse = true;
                undecided_.push_back(r);
                continue;
            }
            const Var v = *pick;
            const Rat a = f.coeff(v, 1).constant_value();
            MPoly value = (f - MPoly(a) * MPoly::var(v)) * Rat(-1 / a);
            for (auto& [u, e] : child.subst) e = e.substitute(v, value);
            child.subst[v] = value;
            bool empty = false;
            for (auto& n : child.neqs)
                if (n.substitute(child.subst).is_zero()) empty = true;
            if (!empty) run(child);
        }
    }
};

} // namespace

std::string_view fg_case_name(FGCase c) {
    switch (c) {
    case FGCase::Direct: return "Direct";
    case FGCase::Moebius: return "Moebius";
    case FGCase::ConstantOnly: return "ConstantOnly";
    case FGCase::None: return "None";
    }
    return "";
}

std::string_view status_name(ComponentStatus s) {
    switch (s) {
    case ComponentStatus::Solved: return "solved";
    case ComponentStatus::NoSolution: return "no_solution";
    case ComponentStatus::ConstantOnly: return "constant_only";
    case ComponentStatus::Reducible: return "reducible";
    case ComponentStatus::Undecided: return "undecided";
    case ComponentStatus::Parametrized: return "parametrized";
    }
    return "";
}

FGClassification feng_gao_check(const Parametrization& P) {
    if (!P.p1.depends_on(T)) throw std::invalid_argument("feng_gao_check: P1 is constant");
    FGClassification cls;
    RatFn R = reduce_for(P, P.p2 / P.p1.derive(T));
    cls.A = R.num();
    cls.B = R.den();
    if (R.is_zero()) {
        cls.kind = FGCase::ConstantOnly;
        return cls;
    }
    if (!R.depends_on(T)) {
        cls.kind = FGCase::Direct;
        cls.alpha = R;
        return cls;
    }
    if (!cls.B.depends_on(T) && cls.A.degree(T) == 2) {
        RatFn a2 = RatFn::make(cls.A.coeff(T, 2), cls.B), a1 = RatFn::make(cls.A.coeff(T, 1), cls.B),
              a0 = RatFn::make(cls.A.coeff(T, 0), cls.B);
        if (reduce_for(P, a1 * a1 - RatFn(4) * a2 * a0).is_zero()) {
            cls.kind = FGCase::Moebius;
            cls.alpha = reduce_for(P, a2);
            cls.beta = reduce_for(P, -a1 / (RatFn(2) * a2));
            return cls;
        }
    }
    cls.kind = FGCase::None;
    return cls;
}

bool certify_solution(const MPoly& F, const RatFn& y, const RatFn& radicand) {
    RatFn yp = y.derive(vars::x());
    Fraction f = substitute_fraction(F, {{vars::y(), y}, {vars::z(), yp}});
    RatFn r = RatFn::make(f.num, f.den);
    if (!radicand.is_zero()) r = reduce_delta(r, radicand);
    return r.is_zero();
}

SolutionFamily solution_from_fg(const MPoly& F, const Parametrization& P, const FGClassification& cls) {
    SolutionFamily fam;
    fam.P = P;
    fam.kind = cls.kind;
    fam.alpha = cls.alpha;
    fam.beta = cls.beta;
    switch (cls.kind) {
    case FGCase::Direct:
    case FGCase::Moebius:
        fam.closed_form = reduce_for(P, P.p1.substitute(T, family_argument(cls)));
        break;
    case FGCase::ConstantOnly: {
        for (int k = 0;; ++k) {
            Rat t0 = (k % 2) ? Rat(-(k + 1) / 2) : Rat(k / 2);
            if (auto v = specialize(P.p1, std::map<Var, Rat>{{T, t0}})) {
                fam.value = reduce_for(P, *v);
                break;
            }
        }
        fam.closed_form = fam.value;
        break;
    }
    case FGCase::None: throw std::invalid_argument("solution_from_fg: no solution family");
    }
    if (!certify_solution(F, fam.closed_form, P.radicand)) throw std::logic_error("solution family failed certification");
    fam.certified = true;
    return fam;
}

ConstructibleSet omega_fg(const Parametrization& P, const FGClassification& cls) {
    if (cls.kind != FGCase::None) throw std::invalid_argument("omega_fg: classification is not None");
    std::set<Var> ps;
    for (auto v : cls.A.variables()) ps.insert(v);
    for (auto v : cls.B.variables()) ps.insert(v);
    ps.erase(T);
    ps.erase(vars::delta());
    std::vector<MPoly> neq;
    auto guard = [&](const MPoly& p) { neq.push_back(param_nonzero(p, ps, P.radicand)); };
    guard(resultant(cls.A, cls.B, T));
    guard(cls.A.lc(T));
    guard(cls.B.lc(T));
    for (const MPoly* f : {&cls.A, &cls.B}) {
        if (f->degree(T) < 2) continue;
        guard(resultant(*f, f->derive(T), T));
    }
    return ConstructibleSet::open(neq);
}

std::optional<RatFn> shift_between(const RatFn& f0, const RatFn& g0) {
    const Var x = vars::x(), k = vars::k();
    std::map<Var, Rat> c0{{vars::c(), Rat(0)}};
    auto f = specialize(f0, c0), g = specialize(g0, c0);
    if (!f || !g) return std::nullopt;
    RatFn fk = f->substitute(x, RatFn(MPoly::var(x) + MPoly::var(k)));
    MPoly E = fk.num() * g->den() - g->num() * fk.den();
    if (E.is_zero()) return RatFn(0);
    MPoly G;
    for (auto& c : E.coeffs(x))
        if (!c.is_zero()) G = G.is_zero() ? c : gcd(G, c);
    if (!G.depends_on(k)) return std::nullopt;
    std::vector<RatFn> cands;
    for (auto& sf : squarefree_decompose(G, k)) {
        const MPoly& h = sf.factor;
        if (h.degree(k) == 1) cands.push_back(RatFn::make(-h.coeff(k, 0), h.coeff(k, 1)));
        else if (h.variables().size() == 1)
            for (auto& r : rational_roots(h, k)) cands.push_back(RatFn(r));
    }
    for (auto& cand : cands)
        if (f->substitute(x, RatFn(MPoly::var(x)) + cand) == *g) return cand;
    return std::nullopt;
}

std::string render_solution(const RatFn& y) {
    const Var x = vars::x(), c = vars::c();
    if (!y.depends_on(c) || !y.depends_on(x)) return render(y);
    static const Var U = Var::named("(x + c)");
    RatFn shifted = y.substitute(x, RatFn(MPoly::var(U) - MPoly::var(c)));
    if (shifted.depends_on(c)) return render(y);
    return render(shifted);
}

std::optional<RatFn> specialize_solution(const SolutionFamily& fam, const std::map<Var, Rat>& point) {
    auto r = specialize(fam.closed_form, point);
    if (!r) return std::nullopt;
    if (fam.uses_delta()) {
        auto rad = specialize(fam.P.radicand, point);
        if (!rad || rad->is_zero()) return std::nullopt;
        return reduce_delta(*r, *rad);
    }
    return r;
}

ConstructibleSet RationalSolutionDecomposition::ps2_set() const {
    ConstructibleSet s;
    for (auto& r : ps2) s.components.push_back(r.component);
    return s;
}

ConstructibleSet RationalSolutionDecomposition::ps3_set() const {
    ConstructibleSet s;
    for (auto& r : ps3) s.components.push_back(r.component);
    return s;
}

RationalSolutionDecomposition constant_parameter_solve(const ProblemSpec& spec, const SolveOptions& opt) {
    if (spec.has_functional()) throw std::invalid_argument("constant_parameter_solve: functional coefficients present");
    Engine e(spec, opt, Mode::Solve);
    RationalSolutionDecomposition d;
    d.ps1 = e.ps1();
    std::mt19937 rng(opt.seed);
    d.irreducibility = check_irreducible(spec.F, spec.constant_params, rng);
    e.run(Ctx{});
    d.ps2 = std::move(e.ps2_);
    d.ps3 = std::move(e.ps3_);
    d.undecided = std::move(e.undecided_);
    return d;
}

ParametrizationDecomposition decompose_parametrizations(const ProblemSpec& spec, const SolveOptions& opt) {
    Engine e(spec, opt, Mode::Parametrize);
    ParametrizationDecomposition d;
    d.ps1 = e.ps1();
    e.run(Ctx{});
    d.ps2 = std::move(e.ps2_);
    d.ps3 = std::move(e.ps3_);
    d.undecided = std::move(e.undecided_);
    return d;
}

nlohmann::json to_json(const ComponentReport& r) {
    nlohmann::json j;
    j["component"] = to_json(r.component);
    j["status"] = status_name(r.status);
    if (!r.substitution.empty()) {
        nlohmann::json s = nlohmann::json::object();
        for (auto& [v, e] : r.substitution) s[v.name()] = render(e);
        j["substitution"] = s;
    }
    if (r.parametrization) {
        j["parametrization"] = render_pair(r.parametrization->p1, r.parametrization->p2);
        j["source"] = r.source;
        if (r.parametrization->uses_delta()) j["delta_squared"] = render(r.parametrization->radicand);
    }
    if (r.covering) {
        nlohmann::json parts = nlohmann::json::array();
        for (std::size_t i = 0; i < r.covering->parts.size(); ++i) {
            nlohmann::json p;
            p["parametrization"] = render_pair(r.covering->parts[i].p1, r.covering->parts[i].p2);
            if (r.covering->critical[i]) {
                p["critical_point"] = render_pair(r.covering->critical[i]->y, r.covering->critical[i]->z);
                p["attained_by"] = r.covering->attained_by[i];
            }
            parts.push_back(p);
        }
        j["covering"] = parts;
    }
    if (r.fg) {
        j["fg_case"] = fg_case_name(r.fg->kind);
        if (r.fg->kind == FGCase::Direct || r.fg->kind == FGCase::Moebius) j["alpha"] = render(r.fg->alpha);
        if (r.fg->kind == FGCase::Moebius) j["beta"] = render(r.fg->beta);
        j["A"] = render(r.fg->A);
        j["B"] = render(r.fg->B);
    }
    if (r.family) {
        j["solution"] = render_solution(r.family->closed_form);
        j["certified"] = r.family->certified;
    }
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

namespace {

nlohmann::json set_of(const std::vector<ComponentReport>& rs) {
    ConstructibleSet s;
    for (auto& r : rs) s.components.push_back(r.component);
    return to_json(s);
}

} // namespace

nlohmann::json to_json(const RationalSolutionDecomposition& d) {
    nlohmann::json j;
    j["ps1"] = to_json(d.ps1);
    j["ps2"] = set_of(d.ps2);
    j["ps2_details"] = nlohmann::json::array();
    for (auto& r : d.ps2) j["ps2_details"].push_back(to_json(r));
    j["ps3"] = nlohmann::json::array();
    for (auto& r : d.ps3) j["ps3"].push_back(to_json(r));
    for (auto& r : d.undecided) j["ps3"].push_back(to_json(r));
    j["irreducibility"] = d.irreducibility == Irreducibility::CheckedProbabilistic ? "checked_probabilistic"
                          : d.irreducibility == Irreducibility::Failed             ? "failed"
                                                                                   : "assumed";
    return j;
}

nlohmann::json to_json(const ParametrizationDecomposition& d) {
    nlohmann::json j;
    j["ps1"] = to_json(d.ps1);
    j["ps2"] = set_of(d.ps2);
    j["ps3"] = nlohmann::json::array();
    for (auto& r : d.ps3) j["ps3"].push_back(to_json(r));
    j["undecided"] = nlohmann::json::array();
    for (auto& r : d.undecided) j["undecided"].push_back(to_json(r));
    return j;
}

} // namespace ratode
